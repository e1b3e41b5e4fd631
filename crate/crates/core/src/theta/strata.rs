//! Dimension bookkeeping for the strata `W^r_{g-1} ⊂ Θ` and the components
//! `Z^r` of the characteristic variety, at the extreme of Martens' bound.

use crate::error::{Error, Result};

/// One stratum `r`, where `h⁰(L) = r + 1`. Dimension fields are `None` when
/// the bound `g - 2r - 2` is negative and the stratum is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataRow {
    pub r: u32,
    pub wr: Option<i64>,
    pub fiber_dim: u32,
    pub codim_in_theta: Option<i64>,
    pub smallness_margin: Option<i64>,
    pub zr_dim: Option<i64>,
    pub multiplicity: u32,
}

impl StrataRow {
    pub fn is_vacuous(&self) -> bool {
        self.wr.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataReport {
    pub g: u32,
    pub rows: Vec<StrataRow>,
}

impl StrataReport {
    /// The smallness margin is checked only for `r >= 1`; at `r = 0` the
    /// condition concerns the whole of `Θ` and says nothing.
    pub fn violations(&self) -> Vec<String> {
        let g = self.g as i64;
        let mut out = Vec::new();
        for row in &self.rows {
            let Some(z) = row.zr_dim else { continue };
            if row.r == 0 {
                if z != g {
                    out.push(format!("dim Z^0 = {z}, expected {g}"));
                }
                continue;
            }
            if row.smallness_margin.is_some_and(|m| m < 1) {
                out.push(format!(
                    "r = {}: smallness margin {:?} < 1",
                    row.r, row.smallness_margin
                ));
            }
            if z > g - 1 {
                out.push(format!("dim Z^{} = {z} > g - 1", row.r));
            }
        }
        if self.rows.iter().any(|row| 2 * row.r > self.g - 1) {
            out.push("row beyond Clifford's bound 2r <= g - 1".into());
        }
        out
    }
}

/// Rows `r = 0..=⌊(g-1)/2⌋`, using `dim W^0 = g - 1` and `dim W^r = g - 2r - 2`
/// for `r >= 1`. Requires `g >= 3`, where Martens' theorem applies to a
/// non-hyperelliptic curve.
pub fn strata_report(g: u32) -> Result<StrataReport> {
    if g < 3 {
        return Err(Error::GenusTooSmall {
            g,
            min: 3,
            what: "the strata bounds, which need a non-hyperelliptic curve",
        });
    }
    let gi = g as i64;
    let rows = (0..=(g - 1) / 2)
        .map(|r| {
            let ri = r as i64;
            let bound = if r == 0 { gi - 1 } else { gi - 2 * ri - 2 };
            let wr = (bound >= 0).then_some(bound);
            let codim = wr.map(|w| (gi - 1) - w);
            StrataRow {
                r,
                wr,
                fiber_dim: r,
                codim_in_theta: codim,
                smallness_margin: codim.map(|c| c - 2 * ri),
                // dim W^r + dim P(H⁰(L)) + dim H⁰(K ⊗ L⁻¹), and h⁰(K ⊗ L⁻¹) = r + 1
                zr_dim: wr.map(|w| w + ri + (ri + 1)),
                multiplicity: r,
            }
        })
        .collect();
    let report = StrataReport { g, rows };
    let violations = report.violations();
    if !violations.is_empty() {
        return Err(Error::Consistency(violations.join("; ")));
    }
    Ok(report)
}

/// Multiplicity of `Θ` at `L`, which is `h⁰(L) - 1`.
pub fn multiplicity(h0: i64) -> Result<i64> {
    if h0 <= 0 {
        return Err(Error::OutOfRange {
            what: "h0 (a point of Θ has a section)",
            value: h0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    Ok(h0 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_rows() {
        let r5 = strata_report(5).unwrap();
        let row = &r5.rows[1];
        assert_eq!(
            (row.wr, row.codim_in_theta, row.smallness_margin, row.zr_dim),
            (Some(1), Some(3), Some(1), Some(4))
        );
        let r3 = strata_report(3).unwrap();
        assert!(r3.rows[1].is_vacuous());
        assert_eq!(r3.rows[0].zr_dim, Some(3));
        let r10 = strata_report(10).unwrap();
        assert_eq!(r10.rows[4].zr_dim, Some(9));
        assert!(strata_report(2).is_err());
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(1).unwrap(), 0);
        assert_eq!(multiplicity(2).unwrap(), 1);
        assert_eq!(multiplicity(3).unwrap(), 2);
        assert!(multiplicity(0).is_err());
    }

    proptest! {
        #[test]
        fn invariants_hold(g in 3u32..=50) {
            let report = strata_report(g).unwrap();
            prop_assert_eq!(report.rows.len() as u32, (g - 1) / 2 + 1);
            prop_assert_eq!(report.rows[0].zr_dim, Some(g as i64));
            for row in &report.rows[1..] {
                if let Some(m) = row.smallness_margin {
                    prop_assert!(m >= 1);
                }
                if let Some(z) = row.zr_dim {
                    prop_assert!(z < g as i64);
                }
                prop_assert_eq!(row.multiplicity, row.r);
            }
        }
    }
}
