//! CSV and JSON export of coefficient tables. Values are always written as
//! integer numerator/denominator pairs, never as decimals.

use serde::Serialize;

use super::{CoeffTable, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalString {
    pub numerator: String,
    pub denominator: String,
}

impl From<&Rational> for RationalString {
    fn from(q: &Rational) -> Self {
        Self {
            numerator: q.numer().to_string(),
            denominator: q.denom().to_string(),
        }
    }
}

#[derive(Serialize)]
struct RowJson {
    k: usize,
    coeffs: Vec<RationalString>,
}

#[derive(Serialize)]
struct TableJson {
    p: u32,
    m: usize,
    order: usize,
    rows: Vec<RowJson>,
}

/// One line per coefficient: `k,i,numerator,denominator`, after a header line.
pub fn table_to_csv(table: &CoeffTable) -> String {
    let mut out = String::from("k,i,numerator,denominator\n");
    for (k, row) in table.rows().iter().enumerate() {
        for (i, c) in row.coeffs().iter().enumerate() {
            out.push_str(&format!("{k},{i},{},{}\n", c.numer(), c.denom()));
        }
    }
    out
}

pub fn table_to_json(table: &CoeffTable) -> serde_json::Value {
    let doc = TableJson {
        p: table.p(),
        m: table.m(),
        order: table.order(),
        rows: table
            .rows()
            .iter()
            .enumerate()
            .map(|(k, row)| RowJson {
                k,
                coeffs: row.coeffs().iter().map(RationalString::from).collect(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("table serializes")
}
