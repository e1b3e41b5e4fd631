//! The theta divisor `Θ ⊂ Pic^{g-1} X` through its small resolution
//! `φ: S^{g-1} X -> Θ`, so that `IH(Θ) = H(S^{g-1} X)`.
//!
//! The involution `ι` induced by `L ↦ K ⊗ L⁻¹` is built twice: from the
//! Riemann-Roch correspondence `ρ = Σ*κ`, and from its closed form on the
//! spanning set `φ*(x)·η^m`.

pub mod counting;
pub mod profile;
pub mod strata;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::rational::{factorial, from_bigint};
use crate::exact::{Elimination, GradedVector, LinearOperator, Rational, SparseMatrix, SparseVec};
use crate::jacobian::{AbelJacobi, Blade, ExtClass, ExteriorAlgebra};
use crate::kunneth::{act_grouped, KunnethClass, Terms};
use crate::sym::{Inclusion, SymClass, SymMonomial, SymRing};

pub use counting::{
    binomial_identity_check, binomial_identity_sides, delta_mod4, fiber_supertrace, lefschetz_balance,
    supertrace_closed_form, theta_char_counts, LefschetzBalance, ThetaCharCounts,
};
pub use profile::{FiltrationCounterexample, FiltrationReport, IhProfile, Witness};
pub use strata::{multiplicity, strata_report, StrataReport, StrataRow};

/// A class on `S^{g-1} X x S^{g-1} X` acting by `α ↦ (pr₂)_*(pr₁*(α) · Γ)`.
#[derive(Debug, Clone)]
pub struct Correspondence {
    ring: Arc<SymRing>,
    kernel: KunnethClass<SymMonomial, SymMonomial>,
    grouped: BTreeMap<SymMonomial, Vec<(SymMonomial, Rational)>>,
}

impl Correspondence {
    pub fn new(ring: Arc<SymRing>, kernel: KunnethClass<SymMonomial, SymMonomial>) -> Self {
        let grouped = kernel.by_left();
        Self { ring, kernel, grouped }
    }

    pub fn ring(&self) -> &Arc<SymRing> {
        &self.ring
    }

    pub fn kernel(&self) -> &KunnethClass<SymMonomial, SymMonomial> {
        &self.kernel
    }

    /// Total degrees present in the kernel.
    pub fn degrees(&self) -> Vec<usize> {
        self.kernel.degrees(self.ring.as_ref(), self.ring.as_ref())
    }

    /// Invariance under the Koszul-signed factor swap.
    pub fn is_swap_symmetric(&self) -> bool {
        self.kernel.swap(self.ring.as_ref(), self.ring.as_ref()) == self.kernel
    }

    pub fn act(&self, a: &SymClass) -> Result<SymClass> {
        if (a.genus(), a.power()) != (self.ring.genus(), self.ring.power()) {
            return Err(Error::RingMismatch {
                left: (self.ring.genus(), self.ring.power()),
                right: (a.genus(), a.power()),
            });
        }
        let out = act_grouped(self.ring.as_ref(), &self.grouped, a.terms());
        Ok(SymClass::from_terms(self.ring.genus(), self.ring.power(), out))
    }

    /// Matrix of the action on the full basis.
    pub fn operator(&self) -> Result<LinearOperator> {
        let space = self.ring.space().clone();
        let ring = self.ring.clone();
        Ok(LinearOperator::from_columns(space.clone(), space, 0, |k, i| {
            let m = ring.basis(k as u32)[i];
            let image = act_grouped(ring.as_ref(), &self.grouped, &Terms::from([(m, Rational::one())]));
            image
                .into_iter()
                .map(|(x, q)| {
                    debug_assert_eq!(x.degree(), k as u32, "correspondence of the wrong degree");
                    (ring.index_of(&x).expect("basis element"), q)
                })
                .collect::<SparseVec>()
        })?)
    }
}

/// Everything attached to one genus: `Pic^{g-1}`, `S^{g-1}` and `φ` between them.
#[derive(Debug)]
pub struct ThetaModel {
    g: u32,
    pic: Arc<ExteriorAlgebra>,
    ring: Arc<SymRing>,
    aj: AbelJacobi,
}

impl ThetaModel {
    pub fn new(g: u32) -> Result<Self> {
        let pic = Arc::new(ExteriorAlgebra::new(g)?);
        let ring = Arc::new(SymRing::new(g, g - 1)?);
        let aj = AbelJacobi::new(pic.clone(), ring.clone())?;
        Ok(Self { g, pic, ring, aj })
    }

    /// Same as [`ThetaModel::new`] but reuses `ring`, which must be `S^{g-1}`
    /// for some `g`; this is how a cached product table gets attached.
    pub fn with_ring(ring: SymRing) -> Result<Self> {
        let g = ring.genus();
        if ring.power() + 1 != g {
            return Err(Error::RingMismatch {
                left: (g, g - 1),
                right: (g, ring.power()),
            });
        }
        let pic = Arc::new(ExteriorAlgebra::new(g)?);
        let ring = Arc::new(ring);
        let aj = AbelJacobi::new(pic.clone(), ring.clone())?;
        Ok(Self { g, pic, ring, aj })
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn pic(&self) -> &Arc<ExteriorAlgebra> {
        &self.pic
    }

    pub fn ring(&self) -> &Arc<SymRing> {
        &self.ring
    }

    pub fn abel_jacobi(&self) -> &AbelJacobi {
        &self.aj
    }

    /// `φ*` into `S^{g-1}`.
    pub fn phi(&self, x: &ExtClass) -> SymClass {
        self.aj.pullback(x).expect("same genus")
    }

    /// `κ ∈ H^{2g-2}(S^{2g-2} X)`, the unique class with `j_*κ = φ*(θ^g/g!)`
    /// on `S^{2g-1} X`. The identity `η · κ = φ*(θ^g/g!)` on `S^{2g-2}` is
    /// checked before returning.
    pub fn canonical_kappa(&self) -> Result<SymClass> {
        let g = self.g;
        let point = self.pic.theta_divided_power(g);
        let upper = Arc::new(SymRing::new(g, 2 * g - 1)?);
        let inclusion = Inclusion::new(upper.clone())?;
        let lower = inclusion.lower().clone();

        let target = AbelJacobi::new(self.pic.clone(), upper.clone())?.pullback(&point)?;
        let push = inclusion.pushforward_operator();
        let k = (2 * g - 2) as i32;
        let block = push.block(k);
        let elim = Elimination::with_rhs(&block, &[upper.coordinates(&target, 2 * g)])?;
        let solution = elim.unique_solutions()?;
        let kappa = lower.from_coordinates(2 * g - 2, &solution[0]);

        let check = AbelJacobi::new(self.pic.clone(), lower.clone())?.pullback(&point)?;
        if lower.mul(&lower.eta(), &kappa)? != check {
            return Err(Error::Consistency(format!(
                "η·κ differs from φ*(θ^g/g!) on S^{} X",
                2 * g - 2
            )));
        }
        Ok(kappa)
    }

    /// `ρ = Σ*κ` along `S^{g-1} x S^{g-1} -> S^{2g-2}`.
    pub fn rr_correspondence(&self, kappa: &SymClass) -> Result<Correspondence> {
        let big = SymRing::new(self.g, 2 * self.g - 2)?;
        let kernel = big.sigma_pullback(kappa, self.g - 1, self.g - 1)?;
        Ok(Correspondence::new(self.ring.clone(), kernel))
    }

    pub fn correspondence_action(&self, rho: &Correspondence, a: &SymClass) -> Result<SymClass> {
        rho.act(a)
    }

    /// `ι` as the action of `ρ`, built from scratch.
    pub fn iota_direct(&self) -> Result<LinearOperator> {
        let kappa = self.canonical_kappa()?;
        self.rr_correspondence(&kappa)?.operator()
    }

    /// `Σ_{i=0}^{m} (-1)^i/(m-i)! · φ*(θ^{m-i}) · η^i`, the image of `η^m`.
    pub fn rr_eta_power(&self, m: u32) -> Result<SymClass> {
        if m > self.g - 1 {
            return Err(Error::OutOfRange {
                what: "power of η",
                value: m as i64,
                lo: 0,
                hi: self.g as i64 - 1,
            });
        }
        let r = &self.ring;
        let mut out = r.zero();
        let theta = self.pic.theta();
        let mut theta_power = self.pic.one();
        for j in 0..=m {
            // j = m - i
            let i = m - j;
            let c = Rational::one() / from_bigint(factorial(j as u64));
            let c = if i % 2 == 1 { -c } else { c };
            let term = r.mul(&self.phi(&theta_power), &r.pow(&r.eta(), i)?)?;
            out = out.add_scaled(&term, &c)?;
            theta_power = self.pic.wedge(&theta_power, &theta)?;
        }
        Ok(out)
    }

    /// Spanning vectors `φ*(e_I)·η^m` of degree `p`, with their level `m`.
    fn spanning_set(&self, p: u32) -> Vec<(Blade, u32)> {
        (0..=p / 2)
            .rev()
            .flat_map(|m| self.pic.basis(p - 2 * m).iter().map(move |b| (*b, m)))
            .collect()
    }

    /// `φ*(e_I) · η^m` and its image `(-1)^{|I|} Σ_i (-1)^i/(m-i)! φ*(e_I θ^{m-i}) η^i`.
    fn spanning_pair(&self, blade: Blade, m: u32, theta_powers: &[ExtClass]) -> Result<(SymClass, SymClass)> {
        let r = &self.ring;
        let e = ExtClass::blade(self.g, blade, Rational::one());
        let eta_power = |i: u32| r.pow(&r.eta(), i);
        let vector = r.mul(&self.phi(&e), &eta_power(m)?)?;
        let mut image = r.zero();
        for i in 0..=m {
            let c = if (i + blade.degree()) % 2 == 1 {
                -Rational::one()
            } else {
                Rational::one()
            };
            let x = self.pic.wedge(&e, &theta_powers[(m - i) as usize])?;
            if x.is_zero() {
                continue;
            }
            image = image.add_scaled(&r.mul(&self.phi(&x), &eta_power(i)?)?, &c)?;
        }
        Ok((vector, image))
    }

    /// `ι` from its values on the spanning set. Fails if those values do
    /// not descend to a well-defined map or do not determine it.
    pub fn iota_formula(&self) -> Result<LinearOperator> {
        let r = self.ring.clone();
        let theta_powers: Vec<ExtClass> = (0..=self.g).map(|m| self.pic.theta_divided_power(m)).collect();
        let mut blocks = BTreeMap::new();
        for p in 0..=2 * (self.g - 1) {
            let n = r.basis(p).len();
            let mut vt = Vec::new();
            let mut wt: Vec<SparseVec> = vec![SparseVec::new(); n];
            for (row, (blade, m)) in self.spanning_set(p).into_iter().enumerate() {
                let (v, w) = self.spanning_pair(blade, m, &theta_powers)?;
                vt.push(r.coordinates(&v, p));
                for (j, q) in r.coordinates(&w, p).iter() {
                    wt[j].set(row, q.clone());
                }
            }
            // Rows of V^T are the spanning vectors; solve V^T M^T = W^T.
            let vt_matrix = SparseMatrix::from_columns(n, vt).transpose();
            let elim = Elimination::with_rhs(&vt_matrix, &wt).map_err(Error::Solve)?;
            if elim.rank() < n {
                return Err(Error::Consistency(format!(
                    "spanning set has rank {} < {n} in degree {p}",
                    elim.rank()
                )));
            }
            let rows = elim
                .solutions()
                .map_err(|e| Error::Consistency(format!("closed form is not well defined in degree {p}: {e}")))?;
            blocks.insert(p as i32, SparseMatrix::from_columns(n, rows).transpose());
        }
        Ok(LinearOperator::new(r.space().clone(), r.space().clone(), 0, blocks)?)
    }

    pub fn apply(&self, iota: &LinearOperator, a: &SymClass) -> Result<SymClass> {
        let v: GradedVector = iota.apply(&self.ring.to_vector(a)?)?;
        Ok(self.ring.from_vector(&v))
    }

    /// Integral over `S^{g-1}`, i.e. over `IH(Θ)`.
    pub fn integrate(&self, a: &SymClass) -> Result<Rational> {
        self.ring.integrate(a)
    }

    pub(crate) fn eta_power(&self, m: u32) -> Result<SymClass> {
        self.ring.pow(&self.ring.eta(), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn kappa_small_genus() {
        let m = ThetaModel::new(1).unwrap();
        let kappa = m.canonical_kappa().unwrap();
        assert_eq!(kappa, SymRing::new(1, 0).unwrap().one());
        let rho = m.rr_correspondence(&kappa).unwrap();
        assert_eq!(rho.kernel().len(), 1);
        assert_eq!(rho.kernel().coefficient(&SymMonomial::UNIT, &SymMonomial::UNIT), int(1));
        for g in 2..=4 {
            let m = ThetaModel::new(g).unwrap();
            let kappa = m.canonical_kappa().unwrap();
            assert_eq!(kappa.homogeneity(), crate::exact::Homogeneity::Degree(2 * g as i32 - 2));
            let rho = m.rr_correspondence(&kappa).unwrap();
            assert_eq!(rho.degrees(), vec![2 * g as usize - 2]);
            assert!(rho.is_swap_symmetric());
        }
    }

    #[test]
    fn action_on_eta_powers() {
        let m = ThetaModel::new(3).unwrap();
        let rho = m.rr_correspondence(&m.canonical_kappa().unwrap()).unwrap();
        let r = m.ring();
        assert_eq!(rho.act(&r.one()).unwrap(), r.one());
        let expected = m.phi(&m.pic().theta()).sub(&r.eta()).unwrap();
        assert_eq!(rho.act(&r.eta()).unwrap(), expected);
        assert_eq!(m.rr_eta_power(1).unwrap(), expected);
        assert_eq!(m.rr_eta_power(0).unwrap(), r.one());
        assert!(m.rr_eta_power(3).is_err());
        let theta = m.pic().theta();
        let theta2 = m.pic().wedge(&theta, &theta).unwrap();
        let two = m
            .phi(&theta2)
            .scaled(&crate::exact::rat(1, 2))
            .sub(&r.mul(&m.phi(&theta), &r.eta()).unwrap())
            .unwrap()
            .add(&r.pow(&r.eta(), 2).unwrap())
            .unwrap();
        assert_eq!(m.rr_eta_power(2).unwrap(), two);
        assert!(rho.act(&SymRing::new(3, 1).unwrap().one()).is_err());
    }

    #[test]
    fn both_constructions_agree_g3() {
        let m = ThetaModel::new(3).unwrap();
        let direct = m.iota_direct().unwrap();
        let formula = m.iota_formula().unwrap();
        assert_eq!(direct, formula);
        assert!(direct.compose(&direct).unwrap().is_identity());
        let traces: Vec<Rational> = (0..=4).map(|k| direct.trace(k).unwrap()).collect();
        assert_eq!(traces, [1, -6, 14, -6, 1].map(int).to_vec());
        assert_eq!(direct.block(1).as_ref(), &SparseMatrix::identity(6).scaled(&int(-1)));
        let top = SymClass::monomial(3, 2, m.ring().top_monomial(), int(1));
        assert_eq!(m.apply(&direct, &top).unwrap(), top);
    }

    #[test]
    fn iota_is_self_adjoint() {
        let m = ThetaModel::new(3).unwrap();
        let iota = m.iota_direct().unwrap();
        let r = m.ring();
        for k in 0..=4 {
            for a in r.basis(k) {
                for b in r.basis(4 - k) {
                    let ca = SymClass::monomial(3, 2, *a, int(1));
                    let cb = SymClass::monomial(3, 2, *b, int(1));
                    assert_eq!(
                        r.pairing(&m.apply(&iota, &ca).unwrap(), &cb).unwrap(),
                        r.pairing(&ca, &m.apply(&iota, &cb).unwrap()).unwrap()
                    );
                }
            }
        }
    }
}
