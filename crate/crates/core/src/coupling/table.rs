use std::str::FromStr;

use crate::exact::{HalfInt, Rational};

use super::{f_expectation_6j, f_expectation_msum, interval_factor, CoupledLevel, CouplingError};

/// One level of a multiplet with its `⟨f⟩` and, above the lowest level, the
/// change `(⟨f⟩_J - ⟨f⟩_{J-1}) / J` of the interval-rule slope.
#[derive(Clone, Debug, PartialEq)]
pub struct FTableRow {
    pub level: CoupledLevel,
    pub f_expect: Rational,
    pub interval_coeff: Option<Rational>,
}

/// All rows of the `(L, S)` multiplet via the 6j route.
pub fn multiplet_rows(l: HalfInt, s: HalfInt) -> Result<Vec<FTableRow>, CouplingError> {
    let mut rows: Vec<FTableRow> = Vec::new();
    for level in CoupledLevel::multiplet(l, s) {
        let f_expect = f_expectation_6j(level)?;
        let interval_coeff = rows.last().map(|prev| interval_factor(&f_expect, &prev.f_expect, level.j()));
        rows.push(FTableRow { level, f_expect, interval_coeff });
    }
    Ok(rows)
}

/// Multiplets `(S, L)` covered by the published table, in its row order.
pub const TABLE1_MULTIPLETS: [(i32, i32); 4] = [(1, 1), (1, 2), (1, 3), (2, 2)];

/// The 14 rows for `(S, L) ∈ {(1,1), (1,2), (1,3), (2,2)}`.
pub fn table1() -> Vec<FTableRow> {
    TABLE1_MULTIPLETS
        .iter()
        .flat_map(|&(s, l)| multiplet_rows(HalfInt::int(l), HalfInt::int(s)).expect("integer multiplets are valid"))
        .collect()
}

/// A row as printed in the published table, fractions unreduced.
#[derive(Clone, Copy, Debug)]
pub struct PublishedRow {
    pub s: i32,
    pub l: i32,
    pub j: i32,
    pub f: &'static str,
    pub interval: Option<&'static str>,
}

const fn row(s: i32, l: i32, j: i32, f: &'static str, interval: Option<&'static str>) -> PublishedRow {
    PublishedRow { s, l, j, f, interval }
}

pub const PUBLISHED_TABLE1: [PublishedRow; 14] = [
    row(1, 1, 0, "8/5", None),
    row(1, 1, 1, "-4/5", Some("-60/25")),
    row(1, 1, 2, "4/25", Some("12/25")),
    row(1, 2, 1, "4/5", None),
    row(1, 2, 2, "-4/5", Some("-28/35")),
    row(1, 2, 3, "8/35", Some("12/35")),
    row(1, 3, 2, "16/25", None),
    row(1, 3, 3, "-4/5", Some("-72/150")),
    row(1, 3, 4, "4/15", Some("-20/150")),
    row(2, 2, 0, "8/7", None),
    row(2, 2, 1, "4/7", Some("-84/147")),
    row(2, 2, 2, "-12/49", Some("-60/147")),
    row(2, 2, 3, "-32/49", Some("-20/147")),
    row(2, 2, 4, "16/49", Some("36/147")),
];

impl PublishedRow {
    pub fn level(&self) -> CoupledLevel {
        CoupledLevel::from_ints(self.l, self.s, self.j).expect("published rows satisfy the triangle rule")
    }

    pub fn f_value(&self) -> Rational {
        Rational::from_str(self.f).expect("valid fraction literal")
    }

    pub fn interval_value(&self) -> Option<Rational> {
        self.interval.map(|t| Rational::from_str(t).expect("valid fraction literal"))
    }
}

/// A published entry that disagrees with the computed value.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    pub level: CoupledLevel,
    /// `"f"` or `"interval"`.
    pub column: &'static str,
    pub published: String,
    pub computed: Rational,
    /// What the m-sum oracle says about the entry.
    pub verdict: String,
}

/// Compares every published entry against the computed table and explains
/// each mismatch with the m-sum oracle.
pub fn table1_discrepancies() -> Result<Vec<Discrepancy>, CouplingError> {
    let computed = table1();
    let mut out = Vec::new();
    for (i, (published, row)) in PUBLISHED_TABLE1.iter().zip(&computed).enumerate() {
        debug_assert_eq!(published.level(), row.level);
        let oracle = f_expectation_msum(row.level)?;
        if published.f_value() != row.f_expect {
            let verdict = if oracle == row.f_expect {
                format!("m-sum oracle gives {oracle}, confirming the computed value; the published entry is wrong")
            } else {
                format!("m-sum oracle gives {oracle}, disagreeing with both")
            };
            out.push(Discrepancy {
                level: row.level,
                column: "f",
                published: published.f.to_string(),
                computed: row.f_expect.clone(),
                verdict,
            });
        }
        let (Some(printed), Some(coeff)) = (published.interval_value(), row.interval_coeff.as_ref()) else {
            continue;
        };
        if printed == *coeff {
            continue;
        }
        let prev = &PUBLISHED_TABLE1[i - 1];
        let prev_oracle = f_expectation_msum(computed[i - 1].level)?;
        let from_published_f = interval_factor(&published.f_value(), &prev.f_value(), row.level.j());
        let verdict = if oracle == published.f_value() && prev_oracle == prev.f_value() {
            format!(
                "m-sum oracle confirms the published ⟨f⟩ values {} and {}, which give {}; the published interval entry is inconsistent with them",
                prev.f, published.f, from_published_f
            )
        } else {
            format!("m-sum oracle gives ⟨f⟩ = {prev_oracle}, {oracle}; the published ⟨f⟩ column is wrong")
        };
        out.push(Discrepancy {
            level: row.level,
            column: "interval",
            published: published.interval.unwrap_or_default().to_string(),
            computed: coeff.clone(),
            verdict,
        });
    }
    Ok(out)
}
