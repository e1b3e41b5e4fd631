//! `H(Pic^d X) = ∧ H¹(X)` with its theta class, and the Abel-Jacobi maps
//! `φ: S^d X -> Pic^d X`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{factorial, from_bigint};
use crate::exact::{BilinearPairing, GradedSpace, GradedVector, LinearOperator, Rational, SparseMatrix, SparseVec};
use crate::kunneth::{add_term, GradedRing, KunnethClass, Terms};
use crate::sym::{bits, check_genus, cross_inversions, SymClass, SymMonomial, SymRing};

/// The blade basis has `2^{2g}` elements, so `Pic` is only built up to here.
pub const MAX_PIC_GENUS: u32 = 10;

/// A wedge monomial `e_{i1} ∧ … ∧ e_{ik}` with `i1 < … < ik`; bit `i - 1`
/// stands for `e_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u64);

impl Blade {
    pub const UNIT: Blade = Blade(0);

    pub fn from_mask(mask: u64) -> Self {
        Blade(mask)
    }

    pub fn new(indices: &[u8]) -> Self {
        SymMonomial::new(indices, 0).odd_mask().into()
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn indices(&self) -> Vec<u8> {
        bits(self.0).map(|b| b + 1).collect()
    }
}

impl From<u64> for Blade {
    fn from(mask: u64) -> Self {
        Blade(mask)
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| bits(self.0).cmp(bits(other.0)))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(u8::to_string).collect();
        write!(f, "e{{{}}}", idx.join(","))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `e_A ∧ e_B`, or `None` when the blades share an index.
pub fn blade_product(a: Blade, b: Blade) -> Option<(bool, Blade)> {
    if a.0 & b.0 != 0 {
        return None;
    }
    Some((cross_inversions(a.0, b.0) % 2 == 1, Blade(a.0 | b.0)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtClass {
    g: u32,
    terms: Terms<Blade>,
}

impl ExtClass {
    pub fn zero(g: u32) -> Self {
        Self { g, terms: Terms::new() }
    }

    pub fn blade(g: u32, b: Blade, q: Rational) -> Self {
        let mut c = Self::zero(g);
        c.add_term(b, &q);
        c
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn terms(&self) -> &Terms<Blade> {
        &self.terms
    }

    pub fn coefficient(&self, b: &Blade) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: Blade, q: &Rational) {
        assert!(b.0 >> (2 * self.g) == 0, "{b} outside genus {}", self.g);
        add_term(&mut self.terms, b, q);
    }

    pub fn add_scaled(&self, other: &ExtClass, factor: &Rational) -> Result<ExtClass> {
        if self.g != other.g {
            return Err(Error::GenusMismatch {
                left: self.g,
                right: other.g,
            });
        }
        let mut out = self.clone();
        for (b, q) in &other.terms {
            out.add_term(*b, &(q * factor));
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: &Rational) -> ExtClass {
        let mut out = ExtClass::zero(self.g);
        for (b, q) in &self.terms {
            out.add_term(*b, &(q * factor));
        }
        out
    }
}

/// The exterior algebra on `e_1 … e_2g` with its orientation.
#[derive(Debug, Clone)]
pub struct ExteriorAlgebra {
    g: u32,
    basis: Vec<Vec<Blade>>,
    index: HashMap<Blade, usize>,
    space: Arc<GradedSpace>,
    /// Integral of the sorted top blade `e_1 ∧ … ∧ e_2g`.
    orientation: Rational,
}

impl ExteriorAlgebra {
    pub fn new(g: u32) -> Result<Self> {
        check_genus(g)?;
        if g > MAX_PIC_GENUS {
            return Err(Error::GenusTooLarge { g, max: MAX_PIC_GENUS });
        }
        let n = 2 * g;
        let mut basis: Vec<Vec<Blade>> = vec![Vec::new(); n as usize + 1];
        for mask in 0..(1u64 << n) {
            basis[mask.count_ones() as usize].push(Blade(mask));
        }
        let mut index = HashMap::new();
        let mut blocks = BTreeMap::new();
        for (k, b) in basis.iter_mut().enumerate() {
            b.sort();
            for (i, x) in b.iter().enumerate() {
                index.insert(*x, i);
            }
            blocks.insert(k as i32, b.iter().map(Blade::to_string).collect());
        }
        // ∫ e_1 ∧ e_{g+1} ∧ … ∧ e_g ∧ e_{2g} = 1 fixes the sign of the sorted blade.
        let order: Vec<u32> = (1..=g).flat_map(|i| [i, i + g]).collect();
        let inversions = (0..order.len())
            .flat_map(|i| (i + 1..order.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| order[i] > order[j])
            .count();
        let orientation = if inversions % 2 == 1 {
            -Rational::one()
        } else {
            Rational::one()
        };
        Ok(Self {
            g,
            basis,
            index,
            space: GradedSpace::new(format!("H(Pic X), g={g}"), blocks),
            orientation,
        })
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn basis(&self, k: u32) -> &[Blade] {
        self.basis.get(k as usize).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, b: &Blade) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn top_blade(&self) -> Blade {
        Blade((1u64 << (2 * self.g)) - 1)
    }

    fn check(&self, a: &ExtClass) -> Result<()> {
        if a.g == self.g {
            Ok(())
        } else {
            Err(Error::GenusMismatch {
                left: self.g,
                right: a.g,
            })
        }
    }

    pub fn one(&self) -> ExtClass {
        ExtClass::blade(self.g, Blade::UNIT, Rational::one())
    }

    pub fn e(&self, i: u32) -> Result<ExtClass> {
        if i == 0 || i > 2 * self.g {
            return Err(Error::OutOfRange {
                what: "odd index",
                value: i as i64,
                lo: 1,
                hi: 2 * self.g as i64,
            });
        }
        Ok(ExtClass::blade(self.g, Blade(1u64 << (i - 1)), Rational::one()))
    }

    /// `θ = Σ_{i ≤ g} e_i ∧ e_{g+i}`
    pub fn theta(&self) -> ExtClass {
        let mut t = ExtClass::zero(self.g);
        for i in 0..self.g {
            t.add_term(Blade((1u64 << i) | (1u64 << (i + self.g))), &Rational::one());
        }
        t
    }

    /// `θ^m / m!`, zero for `m > g`.
    pub fn theta_divided_power(&self, m: u32) -> ExtClass {
        let mut p = self.one();
        let theta = self.theta();
        for _ in 0..m {
            p = self.wedge(&p, &theta).expect("same genus");
        }
        p.scaled(&(Rational::one() / from_bigint(factorial(m as u64))))
    }

    pub fn wedge(&self, a: &ExtClass, b: &ExtClass) -> Result<ExtClass> {
        self.check(a)?;
        self.check(b)?;
        Ok(ExtClass {
            g: self.g,
            terms: self.multiply_terms(&a.terms, &b.terms),
        })
    }

    pub fn integrate(&self, a: &ExtClass) -> Result<Rational> {
        self.check(a)?;
        Ok(self.integrate_terms(&a.terms))
    }

    /// The involution induced by `L ↦ K ⊗ L⁻¹`: `(-1)^p` on degree `p`.
    pub fn iota(&self, a: &ExtClass) -> Result<ExtClass> {
        self.check(a)?;
        let mut out = ExtClass::zero(self.g);
        for (b, q) in &a.terms {
            out.add_term(*b, &if b.degree() % 2 == 1 { -q.clone() } else { q.clone() });
        }
        Ok(out)
    }

    pub fn poincare_pairing(&self) -> BilinearPairing {
        let top = 2 * self.g;
        let mut blocks = BTreeMap::new();
        for k in 0..=top {
            let rows = self.basis(k);
            let mut m = SparseMatrix::zeros(rows.len(), self.basis(top - k).len());
            for (i, a) in rows.iter().enumerate() {
                for (b, v) in self.dual_monomials(a) {
                    m.set(i, self.index[&b], v);
                }
            }
            blocks.insert(k as i32, m);
        }
        BilinearPairing::new(self.space.clone(), self.space.clone(), top as i32, blocks)
            .expect("block shapes follow the basis")
    }

    /// Pullback along `⊗: Pic x Pic -> Pic`, the algebra map with
    /// `e_i ↦ e_i ⊗ 1 + 1 ⊗ e_i`.
    pub fn tensor_pullback(&self, a: &ExtClass) -> Result<KunnethClass<Blade, Blade>> {
        self.check(a)?;
        let mut out = KunnethClass::zero();
        for (b, q) in &a.terms {
            let full = b.0;
            let mut left = full;
            loop {
                let right = full & !left;
                let c = if cross_inversions(left, right) % 2 == 1 {
                    -q.clone()
                } else {
                    q.clone()
                };
                out.add_term(Blade(left), Blade(right), &c);
                if left == 0 {
                    break;
                }
                left = (left - 1) & full;
            }
        }
        Ok(out)
    }

    /// `Δ⁻ = ⊗*(θ^g / g!)`, the class of `{(L₁, L₂) : L₁ ⊗ L₂ ≅ K}`.
    pub fn antidiagonal(&self) -> KunnethClass<Blade, Blade> {
        self.tensor_pullback(&self.theta_divided_power(self.g))
            .expect("same genus")
    }

    pub fn to_vector(&self, a: &ExtClass) -> Result<GradedVector> {
        self.check(a)?;
        let mut v = GradedVector::zero(self.space.clone());
        for (b, q) in &a.terms {
            v.set(b.degree() as i32, self.index[b], q.clone());
        }
        Ok(v)
    }

    pub fn from_vector(&self, v: &GradedVector) -> ExtClass {
        let mut c = ExtClass::zero(self.g);
        for (k, i, q) in v.terms() {
            c.add_term(self.basis[k as usize][i], q);
        }
        c
    }
}

impl GradedRing for ExteriorAlgebra {
    type Monomial = Blade;

    fn monomial_degree(&self, m: &Blade) -> usize {
        m.degree() as usize
    }

    fn top_degree(&self) -> usize {
        2 * self.g as usize
    }

    fn unit_monomial(&self) -> Blade {
        Blade::UNIT
    }

    fn multiply_monomials(&self, a: &Blade, b: &Blade) -> Vec<(Blade, Rational)> {
        match blade_product(*a, *b) {
            None => Vec::new(),
            Some((neg, c)) => vec![(c, if neg { -Rational::one() } else { Rational::one() })],
        }
    }

    fn integrate_monomial(&self, m: &Blade) -> Rational {
        if *m == self.top_blade() {
            self.orientation.clone()
        } else {
            Rational::zero()
        }
    }

    fn dual_monomials(&self, m: &Blade) -> Vec<(Blade, Rational)> {
        let partner = Blade(self.top_blade().0 & !m.0);
        let (neg, _) = blade_product(*m, partner).expect("disjoint");
        let v = if neg {
            -self.orientation.clone()
        } else {
            self.orientation.clone()
        };
        vec![(partner, v)]
    }
}

/// `φ*` and `φ_*` for `φ: S^d X -> Pic^d X`.
#[derive(Debug)]
pub struct AbelJacobi {
    pic: Arc<ExteriorAlgebra>,
    ring: Arc<SymRing>,
    memo: Mutex<HashMap<Blade, Arc<Terms<SymMonomial>>>>,
    pull: OnceLock<LinearOperator>,
    push: OnceLock<LinearOperator>,
}

impl AbelJacobi {
    pub fn new(pic: Arc<ExteriorAlgebra>, ring: Arc<SymRing>) -> Result<Self> {
        if pic.genus() != ring.genus() {
            return Err(Error::GenusMismatch {
                left: pic.genus(),
                right: ring.genus(),
            });
        }
        Ok(Self {
            pic,
            ring,
            memo: Mutex::new(HashMap::new()),
            pull: OnceLock::new(),
            push: OnceLock::new(),
        })
    }

    pub fn pic(&self) -> &Arc<ExteriorAlgebra> {
        &self.pic
    }

    pub fn ring(&self) -> &Arc<SymRing> {
        &self.ring
    }

    /// `φ*(e_I) = ξ_{i1} ⋯ ξ_{ik}`, built by peeling off the largest index.
    pub fn pullback_blade(&self, b: Blade) -> Arc<Terms<SymMonomial>> {
        if let Some(t) = self.memo.lock().expect("memo lock").get(&b) {
            return t.clone();
        }
        let result = if b.0 == 0 {
            self.ring.one().into_terms()
        } else {
            let last = 63 - b.0.leading_zeros();
            let rest = self.pullback_blade(Blade(b.0 & !(1u64 << last)));
            let xi = self.ring.xi(last + 1).expect("index within genus");
            self.ring.multiply_terms(&rest, xi.terms())
        };
        let result = Arc::new(result);
        self.memo.lock().expect("memo lock").insert(b, result.clone());
        result
    }

    pub fn pullback(&self, a: &ExtClass) -> Result<SymClass> {
        self.pic.check(a)?;
        let mut out = Terms::new();
        for (b, q) in a.terms() {
            for (m, c) in self.pullback_blade(*b).iter() {
                add_term(&mut out, *m, &(c * q));
            }
        }
        Ok(SymClass::from_terms(self.ring.genus(), self.ring.power(), out))
    }

    pub fn pullback_operator(&self) -> &LinearOperator {
        self.pull.get_or_init(|| {
            LinearOperator::from_columns(self.pic.space().clone(), self.ring.space().clone(), 0, |k, i| {
                let b = self.pic.basis(k as u32)[i];
                self.pullback_blade(b)
                    .iter()
                    .map(|(m, q)| (self.ring.index_of(m).expect("basis element"), q.clone()))
                    .collect::<SparseVec>()
            })
            .expect("degree-preserving columns")
        })
    }

    /// `φ_*`, the Poincaré adjoint of `φ*`; raises degree by `2(g - d)`.
    pub fn pushforward_operator(&self) -> Result<&LinearOperator> {
        if let Some(op) = self.push.get() {
            return Ok(op);
        }
        let op = self
            .pullback_operator()
            .adjoint(&self.pic.poincare_pairing(), &self.ring.poincare_pairing())?;
        Ok(self.push.get_or_init(|| op))
    }

    pub fn pushforward(&self, a: &SymClass) -> Result<ExtClass> {
        let v = self.pushforward_operator()?.apply(&self.ring.to_vector(a)?)?;
        Ok(self.pic.from_vector(&v))
    }

    /// `(φ x φ)*` of a class on `Pic x Pic`.
    pub fn pullback_product(&self, k: &KunnethClass<Blade, Blade>) -> KunnethClass<SymMonomial, SymMonomial> {
        let f = |b: &Blade| (*self.pullback_blade(*b)).clone();
        k.map_factors(f, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::kunneth::correspondence_action;
    use proptest::prelude::*;

    fn pic(g: u32) -> ExteriorAlgebra {
        ExteriorAlgebra::new(g).unwrap()
    }

    #[test]
    fn wedge_rules() {
        let p = pic(3);
        let e1 = p.e(1).unwrap();
        let e2 = p.e(2).unwrap();
        assert_eq!(p.wedge(&e1, &e2).unwrap(), p.wedge(&e2, &e1).unwrap().scaled(&int(-1)));
        assert!(p.wedge(&e1, &e1).unwrap().is_zero());
        assert!(p.e(7).is_err());
        let mismatch = pic(2).e(1).unwrap();
        assert!(matches!(p.wedge(&e1, &mismatch), Err(Error::GenusMismatch { .. })));
    }

    #[test]
    fn theta_normalization() {
        for g in 1..=5 {
            let p = pic(g);
            let mut theta_g = p.one();
            for _ in 0..g {
                theta_g = p.wedge(&theta_g, &p.theta()).unwrap();
            }
            let g_fact = from_bigint(factorial(g as u64));
            assert_eq!(theta_g.terms().len(), 1);
            assert_eq!(p.integrate(&theta_g).unwrap(), g_fact);
            assert_eq!(p.integrate(&p.theta_divided_power(g)).unwrap(), int(1));
            assert!(p.integrate(&p.theta()).unwrap().is_zero() || g == 1);
            // θ^g = g! e_1 e_{g+1} ⋯ e_g e_{2g}, written in the sorted basis.
            let mut blade = p.one();
            for i in 1..=g {
                blade = p.wedge(&blade, &p.e(i).unwrap()).unwrap();
                blade = p.wedge(&blade, &p.e(i + g).unwrap()).unwrap();
            }
            assert_eq!(theta_g, blade.scaled(&g_fact));
            assert!(p.poincare_pairing().is_nondegenerate());
        }
    }

    #[test]
    fn iota_signs() {
        let p = pic(2);
        assert_eq!(p.iota(&p.e(1).unwrap()).unwrap(), p.e(1).unwrap().scaled(&int(-1)));
        assert_eq!(p.iota(&p.theta()).unwrap(), p.theta());
        let x = p
            .e(1)
            .unwrap()
            .add_scaled(&p.theta(), &int(3))
            .unwrap()
            .add_scaled(&p.one(), &int(-2))
            .unwrap();
        assert_eq!(p.iota(&p.iota(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn tensor_pullback_examples() {
        let p = pic(1);
        let k = p
            .tensor_pullback(&p.wedge(&p.e(1).unwrap(), &p.e(2).unwrap()).unwrap())
            .unwrap();
        let (e1, e2, e12) = (Blade::new(&[1]), Blade::new(&[2]), Blade::new(&[1, 2]));
        let mut expected = KunnethClass::zero();
        expected.add_term(e12, Blade::UNIT, &int(1));
        expected.add_term(e1, e2, &int(1));
        expected.add_term(e2, e1, &int(-1));
        expected.add_term(Blade::UNIT, e12, &int(1));
        assert_eq!(k, expected);
        let unit = p.tensor_pullback(&p.one()).unwrap();
        assert_eq!(unit.len(), 1);
        assert_eq!(unit.coefficient(&Blade::UNIT, &Blade::UNIT), int(1));
        assert_eq!(pic(3).antidiagonal().degrees(&pic(3), &pic(3)), vec![6]);
    }

    #[test]
    fn antidiagonal_acts_as_iota() {
        for g in 1..=5 {
            let p = pic(g);
            let delta = p.antidiagonal();
            for k in 0..=2 * g {
                for b in p.basis(k) {
                    let a = ExtClass::blade(g, *b, int(1));
                    let acted = correspondence_action(&p, &delta, a.terms());
                    assert_eq!(&acted, p.iota(&a).unwrap().terms(), "g={g} {b}");
                }
            }
        }
    }

    #[test]
    fn aj_pullback_examples() {
        let p = Arc::new(pic(3));
        let r = Arc::new(SymRing::new(3, 2).unwrap());
        let aj = AbelJacobi::new(p.clone(), r.clone()).unwrap();
        assert_eq!(aj.pullback(&p.e(1).unwrap()).unwrap(), r.xi(1).unwrap());
        assert_eq!(aj.pullback(&p.one()).unwrap(), r.one());
        let mut expected = r.zero();
        for i in 1..=3 {
            expected = expected
                .add(&r.mul(&r.xi(i).unwrap(), &r.xi(i + 3).unwrap()).unwrap())
                .unwrap();
        }
        assert_eq!(aj.pullback(&p.theta()).unwrap(), expected);
        assert!(AbelJacobi::new(Arc::new(pic(2)), r).is_err());
    }

    #[test]
    fn aj_pullback_is_a_ring_map() {
        let p = Arc::new(pic(2));
        let r = Arc::new(SymRing::new(2, 3).unwrap());
        let aj = AbelJacobi::new(p.clone(), r.clone()).unwrap();
        for k in 0..=4 {
            for a in p.basis(k) {
                for l in 0..=4 {
                    for b in p.basis(l) {
                        let ca = ExtClass::blade(2, *a, int(1));
                        let cb = ExtClass::blade(2, *b, int(1));
                        let lhs = aj.pullback(&p.wedge(&ca, &cb).unwrap()).unwrap();
                        let rhs = r.mul(&aj.pullback(&ca).unwrap(), &aj.pullback(&cb).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn poincare_formula_small() {
        for g in 1..=4u32 {
            let p = Arc::new(pic(g));
            for d in 0..=g {
                let r = Arc::new(SymRing::new(g, d).unwrap());
                let aj = AbelJacobi::new(p.clone(), r.clone()).unwrap();
                let m0 = g - d;
                for i in 0..=d {
                    let pushed = aj.pushforward(&r.pow(&r.eta(), i).unwrap()).unwrap();
                    assert_eq!(pushed, p.theta_divided_power(m0 + i), "g={g} d={d} i={i}");
                }
            }
        }
    }

    #[test]
    fn pushforward_matches_direct_pairing() {
        // φ_*(α) has e_I-coefficient ∫_S α·φ*(e_{I^c}) / ∫ e_I e_{I^c}.
        let g = 3;
        let p = Arc::new(pic(g));
        let r = Arc::new(SymRing::new(g, 2).unwrap());
        let aj = AbelJacobi::new(p.clone(), r.clone()).unwrap();
        for k in 0..=4 {
            for m in r.basis(k) {
                let a = SymClass::monomial(g, 2, *m, int(1));
                let pushed = aj.pushforward(&a).unwrap();
                let mut direct = ExtClass::zero(g);
                for blade in p.basis(k + 2) {
                    let (dual, v) = p.dual_monomials(blade).remove(0);
                    let phi = SymClass::from_terms(g, 2, (*aj.pullback_blade(dual)).clone());
                    direct.add_term(*blade, &(r.pairing(&a, &phi).unwrap() / v));
                }
                assert_eq!(pushed, direct);
            }
        }
    }

    #[test]
    fn induced_correspondence_lemma() {
        // (pr₂)_*(pr₁*(α) · (φxφ)*Δ⁻) = φ* ι_Pic φ_*(α)
        for g in 2..=4u32 {
            let p = Arc::new(pic(g));
            let r = Arc::new(SymRing::new(g, g - 1).unwrap());
            let aj = AbelJacobi::new(p.clone(), r.clone()).unwrap();
            let pulled = aj.pullback_product(&p.antidiagonal());
            for k in 0..=2 * (g - 1) {
                for m in r.basis(k).iter().step_by(3) {
                    let a = SymClass::monomial(g, g - 1, *m, int(1));
                    let lhs = correspondence_action(r.as_ref(), &pulled, a.terms());
                    let rhs = aj.pullback(&p.iota(&aj.pushforward(&a).unwrap()).unwrap()).unwrap();
                    assert_eq!(&lhs, rhs.terms(), "g={g} {m}");
                }
            }
        }
    }

    fn ext_class(g: u32) -> impl Strategy<Value = ExtClass> {
        proptest::collection::vec((0u64..(1u64 << (2 * g)), -3i64..=3), 1..5).prop_map(move |ts| {
            let mut c = ExtClass::zero(g);
            for (b, q) in ts {
                c.add_term(Blade(b), &int(q));
            }
            c
        })
    }

    fn pair() -> impl Strategy<Value = (u32, ExtClass, ExtClass)> {
        (1u32..=4).prop_flat_map(|g| (Just(g), ext_class(g), ext_class(g)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn tensor_pullback_is_a_ring_map((g, a, b) in pair()) {
            let p = pic(g);
            let lhs = p.tensor_pullback(&p.wedge(&a, &b).unwrap()).unwrap();
            let rhs = p.tensor_pullback(&a).unwrap().mul(&p.tensor_pullback(&b).unwrap(), &p, &p);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
