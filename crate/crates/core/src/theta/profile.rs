//! Trace data, the η-filtration and the even-genus witness for `ι`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::counting::supertrace_closed_form;
use super::ThetaModel;
use crate::error::{Error, Result};
use crate::exact::rational::{binomial, from_bigint, primitive_integer_vector};
use crate::exact::{Elimination, LinearOperator, Rational, SparseMatrix, SparseVec};
use crate::jacobian::ExtClass;
use crate::sym::SymClass;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IhProfile {
    pub g: u32,
    pub betti: Vec<usize>,
    pub trace: Vec<Rational>,
    pub supertrace: Rational,
}

/// `Σ_{i+2j=p} (-1)^{i+j} C(2g, i)`, the trace of `ι` on `IH^p` for `p <= g-1`.
pub fn trace_closed_form(g: u32, p: u32) -> BigInt {
    let mut total = BigInt::zero();
    for j in 0..=p / 2 {
        let i = p - 2 * j;
        let c = binomial(2 * g as u64, i as u64);
        if (i + j) % 2 == 1 {
            total -= c;
        } else {
            total += c;
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationCounterexample {
    pub degree: u32,
    /// Spanning vector whose image breaks the rule, as `(blade, level)`.
    pub column: String,
    pub column_level: u32,
    pub row: String,
    pub row_level: u32,
    pub entry: Rational,
    pub expected: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationReport {
    pub g: u32,
    pub holds: bool,
    pub counterexample: Option<FiltrationCounterexample>,
}

/// A degree-2 class with `ι(w) = -w`, written as `a·η + b·φ*θ`, and what
/// happens to its top power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub g: u32,
    pub eta_coefficient: BigInt,
    pub theta_coefficient: BigInt,
    pub w: SymClass,
    pub iota_w: SymClass,
    pub w_power: SymClass,
    pub iota_w_power: SymClass,
    /// `∫ w^{g-1}`
    pub power_integral: Rational,
    /// `ι(w)^{g-1} ≠ ι(w^{g-1})`, so `ι` is not multiplicative.
    pub obstruction: bool,
}

impl ThetaModel {
    /// Betti numbers and traces of `ι` on `IH(Θ)`, checked against the closed
    /// form for `p <= g-1` and against duality above.
    pub fn ih_profile(&self, iota: &LinearOperator) -> Result<IhProfile> {
        let top = 2 * (self.g - 1);
        let betti = self.ring.betti_numbers();
        let trace: Vec<Rational> = (0..=top)
            .map(|p| iota.trace(p as i32))
            .collect::<std::result::Result<_, _>>()?;
        for p in 0..=top {
            let ok = if p < self.g {
                trace[p as usize] == from_bigint(trace_closed_form(self.g, p))
            } else {
                trace[p as usize] == trace[(top - p) as usize]
            };
            if !ok {
                return Err(Error::Consistency(format!(
                    "trace of ι on IH^{p} is {}, which breaks the closed form",
                    trace[p as usize]
                )));
            }
        }
        let supertrace = iota.supertrace()?;
        Ok(IhProfile {
            g: self.g,
            betti,
            trace,
            supertrace,
        })
    }

    /// `STr(ι)`, required to equal `2^{2g-1} - 2^{g-1}`.
    pub fn supertrace_iota(&self, iota: &LinearOperator) -> Result<BigInt> {
        let s = iota.supertrace()?;
        let expected = supertrace_closed_form(self.g)?;
        if s != from_bigint(expected.clone()) {
            return Err(Error::Consistency(format!(
                "supertrace {s} differs from 2^(2g-1) - 2^(g-1) = {expected}"
            )));
        }
        Ok(expected)
    }

    /// In each degree `p <= g-1`, the matrix of `ι` in the basis `φ*(e_I)·η^q`
    /// must preserve `F_q = ⊕_{j <= q} H^{p-2j}·η^j` and act on `Gr_q` by
    /// `(-1)^{p-q}`.
    pub fn filtration_check(&self, iota: &LinearOperator) -> Result<FiltrationReport> {
        let r = &self.ring;
        for p in 0..self.g {
            let span = self.spanning_set(p);
            let mut columns = Vec::new();
            let mut images = Vec::new();
            for (blade, q) in &span {
                let v = r.mul(
                    &self.phi(&ExtClass::blade(self.g, *blade, Rational::one())),
                    &self.eta_power(*q)?,
                )?;
                let coords = r.coordinates(&v, p);
                images.push(iota.block(p as i32).mul_vec(&coords));
                columns.push(coords);
            }
            let v = SparseMatrix::from_columns(r.basis(p).len(), columns);
            let x = Elimination::with_rhs(&v, &images)?.unique_solutions()?;
            for (c, (cb, cq)) in span.iter().enumerate() {
                for (row, (rb, rq)) in span.iter().enumerate() {
                    let entry = x[c].get(row);
                    let expected = if rq > cq {
                        Rational::zero()
                    } else if rq == cq {
                        if row == c {
                            if (p - cq) % 2 == 1 {
                                -Rational::one()
                            } else {
                                Rational::one()
                            }
                        } else {
                            Rational::zero()
                        }
                    } else {
                        continue;
                    };
                    if entry != expected {
                        return Ok(FiltrationReport {
                            g: self.g,
                            holds: false,
                            counterexample: Some(FiltrationCounterexample {
                                degree: p,
                                column: format!("φ*({cb})·η^{cq}"),
                                column_level: *cq,
                                row: format!("φ*({rb})·η^{rq}"),
                                row_level: *rq,
                                entry,
                                expected,
                            }),
                        });
                    }
                }
            }
        }
        Ok(FiltrationReport {
            g: self.g,
            holds: true,
            counterexample: None,
        })
    }

    /// Solves for `w ∈ span(η, φ*θ)` with `ι(w) = -w` and compares `ι` on
    /// `w^{g-1}` with `ι(w)^{g-1}`. For even `g` the obstruction is asserted;
    /// for odd `g` it is only reported.
    pub fn nonmultiplicativity_witness(&self, iota: &LinearOperator) -> Result<Witness> {
        let r = &self.ring;
        let eta = r.eta();
        let phi_theta = self.phi(&self.pic.theta());
        let gens = [eta.clone(), phi_theta.clone()];
        let vs: Vec<SparseVec> = gens.iter().map(|c| r.coordinates(c, 2)).collect();
        let n2 = r.basis(2).len();

        // Express ι on an independent subset, then solve (A + 1)c = 0.
        let pivots = Elimination::of(&SparseMatrix::from_columns(n2, vs.clone())).pivot_columns();
        let basis: Vec<SparseVec> = pivots.iter().map(|&i| vs[i].clone()).collect();
        let v = SparseMatrix::from_columns(n2, basis.clone());
        let images: Vec<SparseVec> = basis.iter().map(|b| iota.block(2).mul_vec(b)).collect();
        let a = SparseMatrix::from_columns(basis.len(), Elimination::with_rhs(&v, &images)?.unique_solutions()?);
        let shifted = a.add(&SparseMatrix::identity(basis.len()));
        let kernel = Elimination::of(&shifted).nullspace();
        let Some(c) = kernel.first() else {
            return Err(Error::NoEigenvector { g: self.g });
        };

        let mut coeffs = vec![Rational::zero(); 2];
        for (slot, &gen) in pivots.iter().enumerate() {
            coeffs[gen] = c.get(slot);
        }
        let ints = primitive_integer_vector(&coeffs);
        let w = eta
            .scaled(&from_bigint(ints[0].clone()))
            .add(&phi_theta.scaled(&from_bigint(ints[1].clone())))?;
        let iota_w = self.apply(iota, &w)?;
        if iota_w != w.scaled(&-Rational::one()) {
            return Err(Error::Consistency(
                "eigen-solve returned a class that is not a -1 eigenvector".into(),
            ));
        }
        let w_power = r.pow(&w, self.g - 1)?;
        let iota_w_power = self.apply(iota, &w_power)?;
        let iota_w_to_power = r.pow(&iota_w, self.g - 1)?;
        let power_integral = r.integrate(&w_power)?;
        let obstruction = iota_w_to_power != iota_w_power;
        if self.g.is_multiple_of(2) {
            if w_power.is_zero() {
                return Err(Error::Consistency(format!("w^{} vanishes", self.g - 1)));
            }
            if iota_w_power != w_power {
                return Err(Error::Consistency("ι does not fix the top class w^(g-1)".into()));
            }
            if !obstruction {
                return Err(Error::Consistency("ι(w)^(g-1) equals ι(w^(g-1))".into()));
            }
        }
        Ok(Witness {
            g: self.g,
            eta_coefficient: ints[0].clone(),
            theta_coefficient: ints[1].clone(),
            w,
            iota_w,
            w_power,
            iota_w_power,
            power_integral,
            obstruction,
        })
    }
}
