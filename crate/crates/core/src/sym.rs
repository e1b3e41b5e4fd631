//! The rational cohomology ring of the symmetric power `S^d X` of a genus-`g`
//! curve, as the symmetric invariants of `H(X)^{⊗d}`.
//!
//! The basis element `m(S, t)` is the Koszul-signed orbit sum of the word
//! holding the odd letters of `S` in ascending order, then `t` top letters,
//! then units. Within a degree, basis elements are ordered by `t` and then
//! lexicographically by the ascending index list of `S`; that tuple is the
//! canonical encoding and the label text is derived from it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, factorial, from_bigint};
use crate::exact::{
    BilinearPairing, GradedSpace, GradedVector, Homogeneity, LinearOperator, Rational, SparseMatrix, SparseVec,
};
use crate::kunneth::{add_term, GradedRing, KunnethClass, Terms};

/// Largest genus whose odd letters fit in a `u64` mask.
pub const MAX_GENUS: u32 = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymMonomial {
    odd: u64,
    tops: u32,
}

impl SymMonomial {
    pub const UNIT: SymMonomial = SymMonomial { odd: 0, tops: 0 };

    /// Bit `i - 1` of `odd` stands for the odd letter `i`.
    pub fn from_mask(odd: u64, tops: u32) -> Self {
        Self { odd, tops }
    }

    /// Panics on a repeated or zero index, since an odd letter squares to zero
    /// and indices are 1-based.
    pub fn new(odd: &[u8], tops: u32) -> Self {
        let mut mask = 0u64;
        for &i in odd {
            assert!((1..=64).contains(&i), "odd index {i} out of range");
            let bit = 1u64 << (i - 1);
            assert!(mask & bit == 0, "odd index {i} repeated");
            mask |= bit;
        }
        Self { odd: mask, tops }
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn odd_count(&self) -> u32 {
        self.odd.count_ones()
    }

    pub fn tops(&self) -> u32 {
        self.tops
    }

    pub fn degree(&self) -> u32 {
        self.odd_count() + 2 * self.tops
    }

    /// Number of non-unit slots, which must not exceed `d`.
    pub fn weight(&self) -> u32 {
        self.odd_count() + self.tops
    }

    pub fn odd_indices(&self) -> Vec<u8> {
        bits(self.odd).map(|b| b + 1).collect()
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl Ord for SymMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.tops
            .cmp(&other.tops)
            .then_with(|| bits(self.odd).cmp(bits(other.odd)))
    }
}

impl PartialOrd for SymMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.odd_indices().iter().map(u8::to_string).collect();
        write!(f, "m({{{}}},{})", idx.join(","), self.tops)
    }
}

impl fmt::Debug for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Set bit positions, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = u8> + Clone {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as u8;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// `i ↦ i ± g` on masks.
pub(crate) fn complement_mask(mask: u64, g: u32) -> u64 {
    let low = mask & ((1u64 << g) - 1);
    let high = mask >> g;
    (low << g) | high
}

/// Number of pairs `(x, y)` with `x ∈ xs`, `y ∈ ys`, `x > y`.
pub(crate) fn cross_inversions(xs: u64, ys: u64) -> u32 {
    bits(xs).map(|b| (ys & ((1u64 << b) - 1)).count_ones()).sum()
}

/// Structure constants of `a · b` in `H(S^d X)`. Independent of `d` apart from
/// dropping terms that need more than `d` slots.
///
/// A product term arises from matching some odd letters `P ⊆ S_a` with their
/// symplectic partners in `S_b`; each matched pair fuses into a top letter.
pub fn monomial_product(g: u32, d: u32, a: &SymMonomial, b: &SymMonomial) -> Vec<(SymMonomial, Rational)> {
    if a.degree() + b.degree() > 2 * d {
        return Vec::new();
    }
    let candidates = a.odd & complement_mask(b.odd, g);
    let mut out: BTreeMap<SymMonomial, Rational> = BTreeMap::new();
    let mut p = candidates;
    loop {
        if let Some((m, c)) = matched_term(g, d, a, b, p) {
            add_term(&mut out, m, &c);
        }
        if p == 0 {
            break;
        }
        p = (p - 1) & candidates;
    }
    out.into_iter().collect()
}

fn matched_term(g: u32, d: u32, a: &SymMonomial, b: &SymMonomial, p: u64) -> Option<(SymMonomial, Rational)> {
    let pbar = complement_mask(p, g);
    let un_a = a.odd & !p;
    let un_b = b.odd & !pbar;
    if un_a & un_b != 0 {
        return None;
    }
    let k = p.count_ones();
    let tops = a.tops + b.tops + k;
    let odd = un_a | un_b;
    if odd.count_ones() + tops > d {
        return None;
    }
    // Bring a's odd letters to (P, rest) and b's to (partners of P, rest).
    // Then the matched pairs fuse into tops and the survivors get sorted;
    // every reordering contributes a sign.
    let mut e = cross_inversions(p, un_a);
    let partners: Vec<u8> = bits(p)
        .map(|x| bits(complement_mask(1u64 << x, g)).next().unwrap())
        .collect();
    for i in 0..partners.len() {
        for j in i + 1..partners.len() {
            if partners[i] > partners[j] {
                e += 1;
            }
        }
    }
    e += cross_inversions(pbar, un_b);
    e += k * (k.saturating_sub(1)) / 2 + k * un_a.count_ones();
    e += (p >> g).count_ones();
    e += cross_inversions(un_a, un_b);
    let mult = factorial(tops as u64) / (factorial(a.tops as u64) * factorial(b.tops as u64));
    let mut c = from_bigint(mult);
    if e % 2 == 1 {
        c = -c;
    }
    Some((SymMonomial { odd, tops }, c))
}

/// Sign of `b · a` relative to `a · b`.
fn commutation_sign(a: &SymMonomial, b: &SymMonomial) -> bool {
    a.odd_count() % 2 == 1 && b.odd_count() % 2 == 1
}

/// Precomputed products of all basis pairs `a <= b` of one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductTable {
    g: u32,
    d: u32,
    entries: BTreeMap<(SymMonomial, SymMonomial), Vec<(SymMonomial, Rational)>>,
}

impl ProductTable {
    pub fn derive(g: u32, d: u32) -> Self {
        let basis: Vec<SymMonomial> = (0..=2 * d).flat_map(|k| enumerate_basis(g, d, k)).collect();
        let mut entries = BTreeMap::new();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                let prod = monomial_product(g, d, lo, hi);
                if !prod.is_empty() {
                    entries.insert((*lo, *hi), prod);
                }
            }
        }
        Self { g, d, entries }
    }

    /// Rebuilds a table from stored entries. The caller is responsible for
    /// having validated them.
    pub fn from_entries(
        g: u32,
        d: u32,
        entries: impl IntoIterator<Item = ((SymMonomial, SymMonomial), Vec<(SymMonomial, Rational)>)>,
    ) -> Self {
        Self {
            g,
            d,
            entries: entries.into_iter().collect(),
        }
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn power(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(SymMonomial, SymMonomial), &Vec<(SymMonomial, Rational)>)> {
        self.entries.iter()
    }

    pub fn product(&self, a: &SymMonomial, b: &SymMonomial) -> Vec<(SymMonomial, Rational)> {
        let (key, flip) = if a <= b {
            ((*a, *b), false)
        } else {
            ((*b, *a), commutation_sign(a, b))
        };
        match self.entries.get(&key) {
            None => Vec::new(),
            Some(v) if flip => v.iter().map(|(m, q)| (*m, -q)).collect(),
            Some(v) => v.clone(),
        }
    }
}

/// `a`-element subsets of `{0..n}` as masks, in lexicographic order of their
/// ascending element lists.
fn subsets(n: u32, a: u32) -> Vec<u64> {
    fn rec(start: u32, n: u32, left: u32, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, acc | (1u64 << i), out);
        }
    }
    let mut out = Vec::new();
    if a <= n {
        rec(0, n, a, 0, &mut out);
    }
    out
}

/// Basis of `H^k(S^d X)` in canonical order; empty outside `0..=2d`.
pub fn enumerate_basis(g: u32, d: u32, k: u32) -> Vec<SymMonomial> {
    let mut out = Vec::new();
    for t in 0..=k / 2 {
        let a = k - 2 * t;
        if a + t > d || a > 2 * g {
            continue;
        }
        out.extend(subsets(2 * g, a).into_iter().map(|odd| SymMonomial { odd, tops: t }));
    }
    out
}

/// `dim H^k(S^d X) = Σ_{a + 2t = k, a + t <= d} C(2g, a)`.
pub fn betti(g: u32, d: u32, k: u32) -> BigUint {
    let mut total = BigUint::zero();
    for t in 0..=k / 2 {
        let a = k - 2 * t;
        if a + t <= d {
            total += binomial(2 * g as u64, a as u64).to_biguint().expect("nonnegative");
        }
    }
    total
}

/// A class in `H(S^d X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymClass {
    g: u32,
    d: u32,
    terms: Terms<SymMonomial>,
}

impl SymClass {
    pub fn zero(g: u32, d: u32) -> Self {
        Self {
            g,
            d,
            terms: Terms::new(),
        }
    }

    pub fn monomial(g: u32, d: u32, m: SymMonomial, q: Rational) -> Self {
        assert!(m.weight() <= d, "{m} needs more than {d} slots");
        let mut c = Self::zero(g, d);
        c.add_term(m, &q);
        c
    }

    pub fn from_terms(g: u32, d: u32, terms: Terms<SymMonomial>) -> Self {
        let mut c = Self::zero(g, d);
        for (m, q) in terms {
            assert!(m.weight() <= d, "{m} needs more than {d} slots");
            c.add_term(m, &q);
        }
        c
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn power(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &Terms<SymMonomial> {
        &self.terms
    }

    pub fn into_terms(self) -> Terms<SymMonomial> {
        self.terms
    }

    pub fn coefficient(&self, m: &SymMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: SymMonomial, q: &Rational) {
        add_term(&mut self.terms, m, q);
    }

    fn check(&self, other: &SymClass) -> Result<()> {
        if self.g == other.g && self.d == other.d {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: (self.g, self.d),
                right: (other.g, other.d),
            })
        }
    }

    /// `self + factor · other`
    pub fn add_scaled(&self, other: &SymClass, factor: &Rational) -> Result<SymClass> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(*m, &(q * factor));
        }
        Ok(out)
    }

    pub fn add(&self, other: &SymClass) -> Result<SymClass> {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &SymClass) -> Result<SymClass> {
        self.add_scaled(other, &-Rational::one())
    }

    pub fn scaled(&self, factor: &Rational) -> SymClass {
        let mut out = SymClass::zero(self.g, self.d);
        for (m, q) in &self.terms {
            out.add_term(*m, &(q * factor));
        }
        out
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(SymMonomial::degree);
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(k) if degrees.all(|j| j == k) => Homogeneity::Degree(k as i32),
            Some(_) => Homogeneity::Mixed,
        }
    }

    pub fn part(&self, k: u32) -> SymClass {
        SymClass {
            g: self.g,
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, q)| (*m, q.clone()))
                .collect(),
        }
    }
}

/// `H(S^d X)` with its enumerated basis.
#[derive(Debug, Clone)]
pub struct SymRing {
    g: u32,
    d: u32,
    basis: Vec<Vec<SymMonomial>>,
    index: HashMap<SymMonomial, usize>,
    space: Arc<GradedSpace>,
    table: Option<Arc<ProductTable>>,
}

pub(crate) fn check_genus(g: u32) -> Result<()> {
    if g == 0 {
        return Err(Error::GenusTooSmall {
            g,
            min: 1,
            what: "the curve model",
        });
    }
    if g > MAX_GENUS {
        return Err(Error::GenusTooLarge { g, max: MAX_GENUS });
    }
    Ok(())
}

impl SymRing {
    pub fn new(g: u32, d: u32) -> Result<Self> {
        check_genus(g)?;
        let basis: Vec<Vec<SymMonomial>> = (0..=2 * d).map(|k| enumerate_basis(g, d, k)).collect();
        let mut index = HashMap::new();
        let mut blocks = BTreeMap::new();
        for (k, b) in basis.iter().enumerate() {
            for (i, m) in b.iter().enumerate() {
                index.insert(*m, i);
            }
            blocks.insert(k as i32, b.iter().map(SymMonomial::label).collect());
        }
        let space = GradedSpace::new(format!("H(S^{d} X), g={g}"), blocks);
        Ok(Self {
            g,
            d,
            basis,
            index,
            space,
            table: None,
        })
    }

    /// Attaches a precomputed product table; it must belong to this ring.
    pub fn with_table(mut self, table: Arc<ProductTable>) -> Result<Self> {
        if (table.genus(), table.power()) != (self.g, self.d) {
            return Err(Error::RingMismatch {
                left: (self.g, self.d),
                right: (table.genus(), table.power()),
            });
        }
        self.table = Some(table);
        Ok(self)
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn power(&self) -> u32 {
        self.d
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn basis(&self, k: u32) -> &[SymMonomial] {
        self.basis.get(k as usize).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, m: &SymMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    fn check(&self, a: &SymClass) -> Result<()> {
        if (a.g, a.d) == (self.g, self.d) {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: (self.g, self.d),
                right: (a.g, a.d),
            })
        }
    }

    pub fn zero(&self) -> SymClass {
        SymClass::zero(self.g, self.d)
    }

    pub fn one(&self) -> SymClass {
        SymClass::monomial(self.g, self.d, SymMonomial::UNIT, Rational::one())
    }

    pub fn xi(&self, i: u32) -> Result<SymClass> {
        if i == 0 || i > 2 * self.g {
            return Err(Error::OutOfRange {
                what: "odd index",
                value: i as i64,
                lo: 1,
                hi: 2 * self.g as i64,
            });
        }
        if self.d == 0 {
            return Ok(self.zero());
        }
        Ok(SymClass::monomial(
            self.g,
            self.d,
            SymMonomial::from_mask(1u64 << (i - 1), 0),
            Rational::one(),
        ))
    }

    /// `η = j_*(1)`, which is `m(∅, 1)`.
    pub fn eta(&self) -> SymClass {
        if self.d == 0 {
            return self.zero();
        }
        SymClass::monomial(self.g, self.d, SymMonomial::from_mask(0, 1), Rational::one())
    }

    /// `m(∅, d)`, with integral `1/d!`.
    pub fn top_monomial(&self) -> SymMonomial {
        SymMonomial::from_mask(0, self.d)
    }

    pub fn product(&self, a: &SymMonomial, b: &SymMonomial) -> Vec<(SymMonomial, Rational)> {
        match &self.table {
            Some(t) => t.product(a, b),
            None => monomial_product(self.g, self.d, a, b),
        }
    }

    pub fn mul(&self, a: &SymClass, b: &SymClass) -> Result<SymClass> {
        self.check(a)?;
        self.check(b)?;
        Ok(SymClass {
            g: self.g,
            d: self.d,
            terms: self.multiply_terms(&a.terms, &b.terms),
        })
    }

    pub fn pow(&self, a: &SymClass, n: u32) -> Result<SymClass> {
        let mut out = self.one();
        for _ in 0..n {
            out = self.mul(&out, a)?;
        }
        Ok(out)
    }

    pub fn integrate(&self, a: &SymClass) -> Result<Rational> {
        self.check(a)?;
        Ok(self.integrate_terms(&a.terms))
    }

    /// `<a, b> = ∫ a · b`
    pub fn pairing(&self, a: &SymClass, b: &SymClass) -> Result<Rational> {
        self.integrate(&self.mul(a, b)?)
    }

    /// The unique basis element pairing nontrivially with `m`, and the value.
    pub fn dual_partner(&self, m: &SymMonomial) -> Option<(SymMonomial, Rational)> {
        if m.weight() > self.d {
            return None;
        }
        let partner = SymMonomial::from_mask(complement_mask(m.odd, self.g), self.d - m.tops - m.odd_count());
        let v = self
            .product(m, &partner)
            .into_iter()
            .find(|(x, _)| *x == self.top_monomial())
            .map(|(_, c)| c / from_bigint(factorial(self.d as u64)))?;
        Some((partner, v))
    }

    pub fn poincare_pairing(&self) -> BilinearPairing {
        let top = 2 * self.d;
        let mut blocks = BTreeMap::new();
        for k in 0..=top {
            let rows = self.basis(k);
            let cols = self.basis(top - k);
            let mut m = SparseMatrix::zeros(rows.len(), cols.len());
            for (i, a) in rows.iter().enumerate() {
                if let Some((b, v)) = self.dual_partner(a) {
                    m.set(i, self.index[&b], v);
                }
            }
            blocks.insert(k as i32, m);
        }
        BilinearPairing::new(self.space.clone(), self.space.clone(), top as i32, blocks)
            .expect("block shapes follow the basis")
    }

    pub fn to_vector(&self, a: &SymClass) -> Result<GradedVector> {
        self.check(a)?;
        let mut v = GradedVector::zero(self.space.clone());
        for (m, q) in &a.terms {
            v.set(m.degree() as i32, self.index[m], q.clone());
        }
        Ok(v)
    }

    pub fn from_vector(&self, v: &GradedVector) -> SymClass {
        let mut c = self.zero();
        for (k, i, q) in v.terms() {
            c.add_term(self.basis[k as usize][i], q);
        }
        c
    }

    /// Coordinates of the degree-`k` part of `a`.
    pub fn coordinates(&self, a: &SymClass, k: u32) -> SparseVec {
        a.terms
            .iter()
            .filter(|(m, _)| m.degree() == k)
            .map(|(m, q)| (self.index[m], q.clone()))
            .collect()
    }

    pub fn from_coordinates(&self, k: u32, v: &SparseVec) -> SymClass {
        let mut c = self.zero();
        for (i, q) in v.iter() {
            c.add_term(self.basis[k as usize][i], q);
        }
        c
    }

    /// The operator of multiplication by a homogeneous class.
    pub fn multiplication_operator(&self, a: &SymClass) -> Result<LinearOperator> {
        self.check(a)?;
        let shift = match a.homogeneity() {
            Homogeneity::Degree(k) => k,
            Homogeneity::Zero => 0,
            Homogeneity::Mixed => {
                return Err(Error::Consistency(
                    "multiplication operator needs a homogeneous class".into(),
                ))
            }
        };
        let space = self.space.clone();
        Ok(LinearOperator::from_columns(space.clone(), space, shift, |k, i| {
            let m = self.basis[k as usize][i];
            let mut col = SparseVec::new();
            for (x, p) in &a.terms {
                for (z, c) in self.product(x, &m) {
                    col.add_at(self.index[&z], &(c * p));
                }
            }
            col
        })?)
    }

    /// `Σ*` along `S^{d1} x S^{d2} -> S^d`, `d = d1 + d2`.
    pub fn sigma_pullback(&self, a: &SymClass, d1: u32, d2: u32) -> Result<KunnethClass<SymMonomial, SymMonomial>> {
        self.check(a)?;
        if d1 + d2 != self.d {
            return Err(Error::RingMismatch {
                left: (self.g, self.d),
                right: (self.g, d1 + d2),
            });
        }
        let mut out = KunnethClass::zero();
        for (m, q) in &a.terms {
            let s = m.odd;
            let mut s1 = s;
            loop {
                let s2 = s & !s1;
                let (w1, w2) = (s1.count_ones(), s2.count_ones());
                let c = if cross_inversions(s1, s2) % 2 == 1 {
                    -q.clone()
                } else {
                    q.clone()
                };
                for t1 in 0..=m.tops {
                    let t2 = m.tops - t1;
                    if w1 + t1 <= d1 && w2 + t2 <= d2 {
                        out.add_term(SymMonomial::from_mask(s1, t1), SymMonomial::from_mask(s2, t2), &c);
                    }
                }
                if s1 == 0 {
                    break;
                }
                s1 = (s1 - 1) & s;
            }
        }
        Ok(out)
    }
}

impl GradedRing for SymRing {
    type Monomial = SymMonomial;

    fn monomial_degree(&self, m: &SymMonomial) -> usize {
        m.degree() as usize
    }

    fn top_degree(&self) -> usize {
        2 * self.d as usize
    }

    fn unit_monomial(&self) -> SymMonomial {
        SymMonomial::UNIT
    }

    fn multiply_monomials(&self, a: &SymMonomial, b: &SymMonomial) -> Vec<(SymMonomial, Rational)> {
        self.product(a, b)
    }

    fn integrate_monomial(&self, m: &SymMonomial) -> Rational {
        if *m == self.top_monomial() {
            Rational::one() / from_bigint(factorial(self.d as u64))
        } else {
            Rational::zero()
        }
    }

    fn dual_monomials(&self, m: &SymMonomial) -> Vec<(SymMonomial, Rational)> {
        self.dual_partner(m).into_iter().collect()
    }
}

/// `j*` along `j: S^{d-1} X -> S^d X`, `D ↦ D + p`. On the tensor model this
/// restricts the last slot to a point, so `m(S, t)` survives exactly when it
/// fits in `d - 1` slots.
pub fn j_pullback(a: &SymClass) -> Result<SymClass> {
    if a.d == 0 {
        return Err(Error::ZeroPower);
    }
    let mut out = SymClass::zero(a.g, a.d - 1);
    for (m, q) in &a.terms {
        if m.weight() < a.d {
            out.add_term(*m, q);
        }
    }
    Ok(out)
}

/// The pair `j*`, `j_*` between `S^d X` and `S^{d-1} X`, with `j_*` built as
/// the Poincaré adjoint of `j*`.
#[derive(Debug, Clone)]
pub struct Inclusion {
    upper: Arc<SymRing>,
    lower: Arc<SymRing>,
    pull: LinearOperator,
    push: LinearOperator,
}

impl Inclusion {
    pub fn new(upper: Arc<SymRing>) -> Result<Self> {
        if upper.d == 0 {
            return Err(Error::ZeroPower);
        }
        let lower = Arc::new(SymRing::new(upper.g, upper.d - 1)?);
        let pull = LinearOperator::from_columns(upper.space.clone(), lower.space.clone(), 0, |k, i| {
            let m = upper.basis[k as usize][i];
            lower.index_of(&m).map_or_else(SparseVec::new, SparseVec::unit)
        })?;
        let push = pull.adjoint(&upper.poincare_pairing(), &lower.poincare_pairing())?;
        Ok(Self {
            upper,
            lower,
            pull,
            push,
        })
    }

    pub fn upper(&self) -> &Arc<SymRing> {
        &self.upper
    }

    pub fn lower(&self) -> &Arc<SymRing> {
        &self.lower
    }

    pub fn pullback_operator(&self) -> &LinearOperator {
        &self.pull
    }

    pub fn pushforward_operator(&self) -> &LinearOperator {
        &self.push
    }

    pub fn pullback(&self, a: &SymClass) -> Result<SymClass> {
        let v = self.pull.apply(&self.upper.to_vector(a)?)?;
        Ok(self.lower.from_vector(&v))
    }

    pub fn pushforward(&self, a: &SymClass) -> Result<SymClass> {
        let v = self.push.apply(&self.lower.to_vector(a)?)?;
        Ok(self.upper.from_vector(&v))
    }
}

/// Total dimension `Σ_k betti(g, d, k)`, as a machine integer when it fits.
pub fn total_dimension(g: u32, d: u32) -> Option<u64> {
    (0..=2 * d).map(|k| betti(g, d, k).to_u64()).sum()
}
