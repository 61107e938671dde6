use std::process::{Command, Output};

use symprod_core::table::TableDocument;

fn symprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symprod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn product_text() {
    let o = symprod(&["product", "--g", "2", "--d", "2", "--u", "1", "--v", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "et^2 + q*(th - et)\n");

    let o = symprod(&["product", "--g", "10", "--d", "5", "--u", "2", "--v", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "et^4\n");

    let o = symprod(&[
        "product", "--g", "5", "--d", "4", "--u", "1", "--v", "1", "--qmax", "3",
    ]);
    assert_eq!(stdout(&o), "et^2 + q*(1/2 * th^2 - th * et) + q^2*(1/2 * th^2 - th * et) + q^3*(1/2 * th^2 - th * et)\n");
}

#[test]
fn product_in_open_window() {
    let o = symprod(&[
        "product", "--g", "8", "--d", "6", "--u", "3", "--v", "3", "--qmax", "4",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("q^3*(unknown)"));

    let o = symprod(&[
        "product", "--g", "8", "--d", "6", "--u", "1", "--v", "2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["qmax"], 3);
    assert_eq!(v["product"][3]["unknown"], true);
}

#[test]
fn gw_values() {
    let o = symprod(&[
        "gw", "--g", "4", "--d", "3", "--e", "1", "--u", "1", "--v", "1", "--w", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "<et^1, et^1, th^0 et^1>_1 = 2\n");

    let o = symprod(&[
        "gw", "--g", "5", "--d", "7", "--e", "3", "--u", "1", "--v", "1", "--w", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("= 0\n"));

    let o = symprod(&[
        "gw", "--g", "8", "--d", "6", "--e", "3", "--u", "2", "--v", "2", "--w", "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).ends_with("= unknown\n"));
}

#[test]
fn info_reports() {
    let o = symprod(&["info", "--g", "2", "--d", "2"]);
    let text = stdout(&o);
    assert!(text.contains("deg q = 2\n"));
    assert!(text.contains("regime = q-linear only\n"));

    let text = stdout(&symprod(&["info", "--g", "5", "--d", "4"]));
    assert!(text.contains("deg q = 0\n"));
    assert!(text.contains("regime = d = g-1 series\n"));

    let text = stdout(&symprod(&["info", "--g", "10", "--d", "5"]));
    assert!(text.contains("regime = all classical\n"));
    assert!(text.contains("hyperbola bound = 1/2\n"));
}

#[test]
fn tables() {
    let o = symprod(&[
        "table", "--g", "2", "--d", "2", "--max", "2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = TableDocument::parse_json(&stdout(&o)).unwrap();
    assert_eq!((doc.g, doc.d, doc.qmax), (2, 2, 5));
    let row = doc.rows.iter().find(|r| r.u == 1 && r.v == 1).unwrap();
    assert_eq!(row.product.len(), 6);

    let o = symprod(&[
        "table", "--g", "2", "--d", "2", "--max", "2", "--format", "csv",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("u,v,product\n"));
    assert!(text.contains("1,1,et^2 + q*(th - et)\n"));

    let a = symprod(&[
        "table", "--g", "6", "--d", "4", "--max", "4", "--format", "json",
    ]);
    let b = symprod(&[
        "table", "--g", "6", "--d", "4", "--max", "4", "--format", "json",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_suites() {
    for args in [
        &["verify", "--suite", "oracle", "--gmax", "4"][..],
        &[
            "verify",
            "--suite",
            "relations",
            "--g",
            "3",
            "--d",
            "3",
            "--qmax",
            "6",
        ],
        &["verify", "--suite", "assoc", "--g", "2", "--d", "2"],
        &["verify", "--suite", "grading", "--gmax", "3"],
        &["verify", "--suite", "duality", "--g", "4", "--d", "3"],
    ] {
        let o = symprod(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        for line in stdout(&o).lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["passed"], true, "{line}");
        }
    }
}

#[test]
fn usage_errors() {
    let o = symprod(&["product", "--g", "2", "--d", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert_eq!(
        symprod(&["table", "--g", "2", "--d", "2", "--max", "2", "--format", "yaml"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        symprod(&["info", "--g", "2", "--d", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(
        symprod(&["verify", "--suite", "bogus"]).status.code(),
        Some(1)
    );
    assert_eq!(symprod(&["--version"]).status.code(), Some(0));
}
