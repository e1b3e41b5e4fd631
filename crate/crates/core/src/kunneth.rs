//! Classes on a product `A x B` stored in Künneth form `Σ c · x ⊗ y`, where
//! `x ⊗ y` stands for `pr₁*(x) ⌣ pr₂*(y)`.
//!
//! Conventions: `(a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} ac ⊗ bd`,
//! `∫_{A×B} x ⊗ y = ∫_A x · ∫_B y` and `(pr₂)_*(x ⊗ y) = (∫_A x) · y`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::exact::Rational;

/// A rational combination of monomials. Zero coefficients are never stored.
pub type Terms<M> = BTreeMap<M, Rational>;

pub(crate) fn add_term<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, q: &Rational) {
    if q.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += q;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(q.clone());
        }
    }
}

/// A graded-commutative ring with a distinguished monomial basis and an
/// integration functional on the top degree.
pub trait GradedRing {
    type Monomial: Clone + Ord + Debug;

    fn monomial_degree(&self, m: &Self::Monomial) -> usize;

    fn top_degree(&self) -> usize;

    fn unit_monomial(&self) -> Self::Monomial;

    fn multiply_monomials(&self, a: &Self::Monomial, b: &Self::Monomial) -> Vec<(Self::Monomial, Rational)>;

    fn integrate_monomial(&self, m: &Self::Monomial) -> Rational;

    /// Every monomial `x` with `∫ m·x ≠ 0`, with the value of the integral.
    fn dual_monomials(&self, m: &Self::Monomial) -> Vec<(Self::Monomial, Rational)>;

    fn multiply_terms(&self, a: &Terms<Self::Monomial>, b: &Terms<Self::Monomial>) -> Terms<Self::Monomial> {
        let mut out = Terms::new();
        for (x, p) in a {
            for (y, q) in b {
                let pq = p * q;
                for (z, c) in self.multiply_monomials(x, y) {
                    add_term(&mut out, z, &(c * &pq));
                }
            }
        }
        out
    }

    fn integrate_terms(&self, a: &Terms<Self::Monomial>) -> Rational {
        a.iter()
            .map(|(m, q)| self.integrate_monomial(m) * q)
            .fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// A class on `A x B` in Künneth form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunnethClass<L: Ord, R: Ord> {
    terms: BTreeMap<(L, R), Rational>,
}

impl<L: Ord + Clone + Debug, R: Ord + Clone + Debug> Default for KunnethClass<L, R> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<L: Ord + Clone + Debug, R: Ord + Clone + Debug> KunnethClass<L, R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, x: L, y: R, q: &Rational) {
        add_term(&mut self.terms, (x, y), q);
    }

    pub fn add(&mut self, other: &Self, factor: &Rational) {
        for ((x, y), q) in &other.terms {
            self.add_term(x.clone(), y.clone(), &(q * factor));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&L, &R, &Rational)> {
        self.terms.iter().map(|((x, y), q)| (x, y, q))
    }

    pub fn coefficient(&self, x: &L, y: &R) -> Rational {
        self.terms
            .get(&(x.clone(), y.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `pr₁*(α) = α ⊗ 1`
    pub fn from_left<B: GradedRing<Monomial = R>>(alpha: &Terms<L>, right: &B) -> Self {
        let mut k = Self::zero();
        let one = right.unit_monomial();
        for (x, q) in alpha {
            k.add_term(x.clone(), one.clone(), q);
        }
        k
    }

    /// `pr₂*(β) = 1 ⊗ β`
    pub fn from_right<A: GradedRing<Monomial = L>>(left: &A, beta: &Terms<R>) -> Self {
        let mut k = Self::zero();
        let one = left.unit_monomial();
        for (y, q) in beta {
            k.add_term(one.clone(), y.clone(), q);
        }
        k
    }

    /// Set of total degrees that occur.
    pub fn degrees<A, B>(&self, left: &A, right: &B) -> Vec<usize>
    where
        A: GradedRing<Monomial = L>,
        B: GradedRing<Monomial = R>,
    {
        let mut ds: Vec<usize> = self
            .terms
            .keys()
            .map(|(x, y)| left.monomial_degree(x) + right.monomial_degree(y))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn mul<A, B>(&self, other: &Self, left: &A, right: &B) -> Self
    where
        A: GradedRing<Monomial = L>,
        B: GradedRing<Monomial = R>,
    {
        let mut out = Self::zero();
        for ((a, b), p) in &self.terms {
            let deg_b = right.monomial_degree(b);
            for ((c, d), q) in &other.terms {
                let mut coeff = p * q;
                if deg_b * left.monomial_degree(c) % 2 == 1 {
                    coeff = -coeff;
                }
                let ac = left.multiply_monomials(a, c);
                if ac.is_empty() {
                    continue;
                }
                let bd = right.multiply_monomials(b, d);
                for (x, s) in &ac {
                    for (y, t) in &bd {
                        out.add_term(x.clone(), y.clone(), &(&coeff * s * t));
                    }
                }
            }
        }
        out
    }

    /// Applies degree-preserving algebra maps factorwise, as in `(f x g)*`.
    pub fn map_factors<L2, R2>(
        &self,
        mut f: impl FnMut(&L) -> Terms<L2>,
        mut g: impl FnMut(&R) -> Terms<R2>,
    ) -> KunnethClass<L2, R2>
    where
        L2: Ord + Clone + Debug,
        R2: Ord + Clone + Debug,
    {
        let mut left_cache: BTreeMap<L, Terms<L2>> = BTreeMap::new();
        let mut right_cache: BTreeMap<R, Terms<R2>> = BTreeMap::new();
        let mut out = KunnethClass::zero();
        for ((x, y), q) in &self.terms {
            let fx = left_cache.entry(x.clone()).or_insert_with(|| f(x)).clone();
            let gy = right_cache.entry(y.clone()).or_insert_with(|| g(y));
            for (a, s) in &fx {
                for (b, t) in gy.iter() {
                    out.add_term(a.clone(), b.clone(), &(q * s * t));
                }
            }
        }
        out
    }

    /// The pullback along the factor swap `B x A -> A x B`:
    /// `x ⊗ y ↦ (-1)^{|x||y|} y ⊗ x`.
    pub fn swap<A, B>(&self, left: &A, right: &B) -> KunnethClass<R, L>
    where
        A: GradedRing<Monomial = L>,
        B: GradedRing<Monomial = R>,
    {
        let mut out = KunnethClass::zero();
        for ((x, y), q) in &self.terms {
            let mut c = q.clone();
            if left.monomial_degree(x) * right.monomial_degree(y) % 2 == 1 {
                c = -c;
            }
            out.add_term(y.clone(), x.clone(), &c);
        }
        out
    }

    /// `(pr₂)_*`: `x ⊗ y ↦ (∫ x) y`.
    pub fn push_to_right<A: GradedRing<Monomial = L>>(&self, left: &A) -> Terms<R> {
        let mut out = Terms::new();
        for ((x, y), q) in &self.terms {
            let i = left.integrate_monomial(x);
            if !i.is_zero() {
                add_term(&mut out, y.clone(), &(i * q));
            }
        }
        out
    }

    /// Groups terms by their left factor, for repeated correspondence actions.
    pub fn by_left(&self) -> BTreeMap<L, Vec<(R, Rational)>> {
        let mut out: BTreeMap<L, Vec<(R, Rational)>> = BTreeMap::new();
        for ((x, y), q) in &self.terms {
            out.entry(x.clone()).or_default().push((y.clone(), q.clone()));
        }
        out
    }
}

/// The correspondence action `α ↦ (pr₂)_*(pr₁*(α) ⌣ Γ)` computed from a
/// kernel grouped by left factor (see [`KunnethClass::by_left`]).
pub fn act_grouped<L, R, A>(left: &A, grouped: &BTreeMap<L, Vec<(R, Rational)>>, alpha: &Terms<L>) -> Terms<R>
where
    L: Ord + Clone + Debug,
    R: Ord + Clone + Debug,
    A: GradedRing<Monomial = L>,
{
    // pr₁*(a)(x ⊗ y) = ax ⊗ y, and (pr₂)_* keeps ∫ ax.
    let mut out = Terms::new();
    for (a, p) in alpha {
        for (x, v) in left.dual_monomials(a) {
            if let Some(ys) = grouped.get(&x) {
                let pv = p * v;
                for (y, q) in ys {
                    add_term(&mut out, y.clone(), &(&pv * q));
                }
            }
        }
    }
    out
}

/// Convenience wrapper for a single action.
pub fn correspondence_action<L, R, A>(left: &A, kernel: &KunnethClass<L, R>, alpha: &Terms<L>) -> Terms<R>
where
    L: Ord + Clone + Debug,
    R: Ord + Clone + Debug,
    A: GradedRing<Monomial = L>,
{
    act_grouped(left, &kernel.by_left(), alpha)
}

/// `1` as a one-term combination.
pub fn unit_terms<A: GradedRing>(ring: &A) -> Terms<A::Monomial> {
    let mut t = Terms::new();
    t.insert(ring.unit_monomial(), Rational::one());
    t
}
