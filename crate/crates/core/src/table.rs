//! Serialized multiplication tables of `η^u * η^v`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::quantum::{qprod_eta, QClass};
use crate::ring::{Ambient, CohClass, Monomial};

pub const FORMAT_VERSION: &str = "symprod-table/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub theta: u32,
    pub eta: u32,
    /// Numerator and denominator as decimal strings (arbitrary size).
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderEntry {
    Known { qpow: u32, terms: Vec<TermEntry> },
    Unknown { qpow: u32, unknown: bool },
}

impl OrderEntry {
    pub fn qpow(&self) -> u32 {
        match self {
            OrderEntry::Known { qpow, .. } | OrderEntry::Unknown { qpow, .. } => *qpow,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub u: u32,
    pub v: u32,
    pub product: Vec<OrderEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub format: String,
    pub g: u32,
    pub d: u32,
    pub qmax: u32,
    pub rows: Vec<TableRow>,
}

pub fn encode_class(x: &QClass) -> Vec<OrderEntry> {
    x.orders()
        .iter()
        .enumerate()
        .map(|(e, c)| match c {
            None => OrderEntry::Unknown {
                qpow: e as u32,
                unknown: true,
            },
            Some(c) => OrderEntry::Known {
                qpow: e as u32,
                terms: c
                    .terms()
                    .map(|(m, q)| TermEntry {
                        theta: m.theta,
                        eta: m.eta,
                        num: q.numer().to_string(),
                        den: q.denom().to_string(),
                    })
                    .collect(),
            },
        })
        .collect()
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::Format(format!("not an integer: {s:?}")))
}

pub fn decode_class(amb: Ambient, entries: &[OrderEntry]) -> Result<QClass> {
    let mut orders = Vec::with_capacity(entries.len());
    for (e, entry) in entries.iter().enumerate() {
        if entry.qpow() != e as u32 {
            return Err(Error::Format(format!(
                "expected qpow {e}, found {}",
                entry.qpow()
            )));
        }
        match entry {
            OrderEntry::Unknown { unknown: true, .. } => orders.push(None),
            OrderEntry::Unknown { unknown: false, .. } => {
                return Err(Error::Format(format!(
                    "order {e}: \"unknown\" must be true"
                )))
            }
            OrderEntry::Known { terms, .. } => {
                let mut c = CohClass::zero(amb);
                for t in terms {
                    let num = parse_int(&t.num)?;
                    let den = parse_int(&t.den)?;
                    if !den.is_positive() || !num.gcd(&den).is_one() || num.is_zero() {
                        return Err(Error::Format(format!(
                            "order {e}: coefficient {}/{} not in lowest terms",
                            t.num, t.den
                        )));
                    }
                    c.add_term(Monomial::new(t.theta, t.eta), Rational::new(num, den));
                }
                orders.push(Some(c));
            }
        }
    }
    QClass::from_orders(amb, orders)
}

impl TableDocument {
    /// `η^u * η^v` for all `u, v ≥ 0` with `u + v ≤ max`.
    pub fn build(amb: Ambient, max: u32, qmax: u32) -> Self {
        let rows = (0..=max)
            .flat_map(|u| (0..=max - u).map(move |v| (u, v)))
            .map(|(u, v)| TableRow {
                u,
                v,
                product: encode_class(&qprod_eta(u, v, amb, qmax)),
            })
            .collect();
        TableDocument {
            format: FORMAT_VERSION.to_string(),
            g: amb.g(),
            d: amb.d(),
            qmax,
            rows,
        }
    }

    pub fn ambient(&self) -> Result<Ambient> {
        Ambient::new(self.g, self.d)
    }

    pub fn has_unknown(&self) -> bool {
        self.rows
            .iter()
            .flat_map(|r| &r.product)
            .any(|o| matches!(o, OrderEntry::Unknown { .. }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        let doc: TableDocument =
            serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    /// Checks the version tag, order layout and coefficient normalization.
    pub fn validate(&self) -> Result<()> {
        if self.format != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported format {:?}",
                self.format
            )));
        }
        let amb = self.ambient()?;
        for row in &self.rows {
            let x = decode_class(amb, &row.product)?;
            if x.truncation_order() != self.qmax {
                return Err(Error::Format(format!(
                    "row ({}, {}) has {} orders",
                    row.u,
                    row.v,
                    row.product.len()
                )));
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let amb = self.ambient()?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Format(e.to_string());
        w.write_record(["u", "v", "product"]).map_err(io)?;
        for row in &self.rows {
            let text = decode_class(amb, &row.product)?.to_string();
            w.write_record([row.u.to_string(), row.v.to_string(), text])
                .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
