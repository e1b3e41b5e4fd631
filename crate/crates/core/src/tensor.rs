//! Brute-force model of `H•(X)^{⊗d}` for a genus-`g` curve.
//!
//! Words are ordered tuples of letters, one per factor; the product is
//! slotwise with Koszul signs. Symmetrized words span the invariants under
//! the signed action of the symmetric group, which is the cohomology of the
//! `d`-th symmetric power. This module is the semantic reference for
//! [`crate::sym`]; it is only meant for small `g` and `d`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exact::Rational;

/// A basis element of `H•(X)`: `Unit` (degree 0), `Odd(i)` for
/// `1 <= i <= 2g` (degree 1) or `Top` (degree 2, the point class).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Unit,
    Odd(u8),
    Top,
}

impl Letter {
    pub fn degree(self) -> usize {
        match self {
            Letter::Unit => 0,
            Letter::Odd(_) => 1,
            Letter::Top => 2,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Letter::Odd(_))
    }
}

/// Product in `H•(X)`: `e_i e_{i+g} = top = -e_{i+g} e_i`, other odd
/// products vanish, `top` kills positive degree.
pub fn letter_mul(g: u8, a: Letter, b: Letter) -> Option<(i8, Letter)> {
    match (a, b) {
        (Letter::Unit, x) | (x, Letter::Unit) => Some((1, x)),
        (Letter::Odd(i), Letter::Odd(j)) if j == i + g => Some((1, Letter::Top)),
        (Letter::Odd(i), Letter::Odd(j)) if i == j + g => Some((-1, Letter::Top)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord(pub Vec<Letter>);

impl TensorWord {
    pub fn slots(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|l| l.degree()).sum()
    }

    /// Koszul sign of reordering the word by `perm` (new slot `k` holds old
    /// slot `perm[k]`) together with the permuted word.
    pub fn permuted(&self, perm: &[usize]) -> (i8, TensorWord) {
        let word = TensorWord(perm.iter().map(|&p| self.0[p]).collect());
        let mut inversions = 0usize;
        for a in 0..perm.len() {
            for b in a + 1..perm.len() {
                if perm[a] > perm[b] && self.0[perm[a]].is_odd() && self.0[perm[b]].is_odd() {
                    inversions += 1;
                }
            }
        }
        (if inversions.is_multiple_of(2) { 1 } else { -1 }, word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("slot counts differ: {left} vs {right}")]
pub struct SlotMismatch {
    pub left: usize,
    pub right: usize,
}

/// A rational combination of tensor words with no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TensorClass {
    terms: BTreeMap<TensorWord, Rational>,
}

impl TensorClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: TensorWord) -> Self {
        let mut c = Self::zero();
        c.add_term(w, &Rational::one());
        c
    }

    pub fn add_term(&mut self, w: TensorWord, q: &Rational) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add(&mut self, other: &TensorClass, factor: &Rational) {
        for (w, q) in &other.terms {
            self.add_term(w.clone(), &(q * factor));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &TensorWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, g: u8, other: &TensorClass) -> Result<TensorClass, SlotMismatch> {
        let mut out = TensorClass::zero();
        for (u, p) in &self.terms {
            for (v, q) in &other.terms {
                let prod = word_mul(g, u, v)?;
                out.add(&prod, &(p * q));
            }
        }
        Ok(out)
    }

    /// Applies a slot permutation to every word, with Koszul signs.
    pub fn permuted(&self, perm: &[usize]) -> TensorClass {
        let mut out = TensorClass::zero();
        for (w, q) in &self.terms {
            let (s, pw) = w.permuted(perm);
            out.add_term(pw, &(q * Rational::from_integer(s.into())));
        }
        out
    }
}

/// Slotwise product with sign `(-1)^{Σ_{k>l} |v_l||u_k|}`.
pub fn word_mul(g: u8, u: &TensorWord, v: &TensorWord) -> Result<TensorClass, SlotMismatch> {
    if u.slots() != v.slots() {
        return Err(SlotMismatch {
            left: u.slots(),
            right: v.slots(),
        });
    }
    let mut exponent = 0usize;
    let mut odd_v_seen = 0usize;
    let mut letters = Vec::with_capacity(u.slots());
    let mut sgn = 1i8;
    for (a, b) in u.0.iter().zip(&v.0) {
        if a.is_odd() {
            exponent += odd_v_seen;
        }
        if b.is_odd() {
            odd_v_seen += 1;
        }
        match letter_mul(g, *a, *b) {
            Some((s, l)) => {
                sgn *= s;
                letters.push(l);
            }
            None => return Ok(TensorClass::zero()),
        }
    }
    if exponent % 2 == 1 {
        sgn = -sgn;
    }
    let mut out = TensorClass::zero();
    out.add_term(TensorWord(letters), &Rational::from_integer(sgn.into()));
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Orbit sum of `w` under the signed slot action: each distinct permuted
/// word appears once, with the Koszul sign relative to `w`. Words with a
/// repeated odd letter symmetrize to zero.
pub fn symmetrize(w: &TensorWord) -> TensorClass {
    let perms = permutations(w.slots());
    let stabilizer = perms
        .iter()
        .filter(|p| p.iter().enumerate().all(|(k, &j)| w.0[k] == w.0[j]))
        .count();
    let mut sum = TensorClass::zero();
    for p in &perms {
        let (s, pw) = w.permuted(p);
        sum.add_term(pw, &Rational::from_integer(s.into()));
    }
    let mut out = TensorClass::zero();
    out.add(&sum, &Rational::new(1.into(), (stabilizer as i64).into()));
    out
}

/// True iff `c` is fixed by every signed adjacent transposition.
pub fn is_invariant(c: &TensorClass) -> bool {
    let Some((w, _)) = c.terms().next() else {
        return true;
    };
    let d = w.slots();
    (0..d.saturating_sub(1)).all(|k| {
        let mut perm: Vec<usize> = (0..d).collect();
        perm.swap(k, k + 1);
        c.permuted(&perm) == *c
    })
}

/// Representative word: odd letters ascending, then tops, then units.
pub fn representative_word(odd: &[u8], tops: usize, d: usize) -> TensorWord {
    let mut letters: Vec<Letter> = odd.iter().map(|&i| Letter::Odd(i)).collect();
    letters.extend(std::iter::repeat_n(Letter::Top, tops));
    assert!(letters.len() <= d, "word needs more than {d} slots");
    letters.resize(d, Letter::Unit);
    TensorWord(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use Letter::*;

    fn w(ls: &[Letter]) -> TensorWord {
        TensorWord(ls.to_vec())
    }

    fn class(terms: &[(&[Letter], i64)]) -> TensorClass {
        let mut c = TensorClass::zero();
        for (ls, q) in terms {
            c.add_term(w(ls), &int(*q));
        }
        c
    }

    const G: u8 = 3;

    #[test]
    fn disjoint_slots_multiply_without_sign() {
        let p = word_mul(G, &w(&[Odd(1), Unit]), &w(&[Unit, Odd(1)])).unwrap();
        assert_eq!(p, class(&[(&[Odd(1), Odd(1)], 1)]));
    }

    #[test]
    fn koszul_swap_of_odd_letters() {
        let p = word_mul(G, &w(&[Unit, Odd(1)]), &w(&[Odd(G + 1), Unit])).unwrap();
        assert_eq!(p, class(&[(&[Odd(G + 1), Odd(1)], -1)]));
    }

    #[test]
    fn letter_table() {
        let p = word_mul(G, &w(&[Odd(1), Unit]), &w(&[Odd(G + 1), Unit])).unwrap();
        assert_eq!(p, class(&[(&[Top, Unit], 1)]));
        let q = word_mul(G, &w(&[Odd(G + 1)]), &w(&[Odd(1)])).unwrap();
        assert_eq!(q, class(&[(&[Top], -1)]));
        assert!(word_mul(G, &w(&[Odd(1)]), &w(&[Odd(2)])).unwrap().is_zero());
        assert!(word_mul(G, &w(&[Odd(1)]), &w(&[Odd(1)])).unwrap().is_zero());
        assert!(word_mul(G, &w(&[Top]), &w(&[Odd(1)])).unwrap().is_zero());
    }

    #[test]
    fn slot_mismatch() {
        assert_eq!(
            word_mul(G, &w(&[Unit]), &w(&[Unit, Unit])),
            Err(SlotMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn symmetrize_examples() {
        assert_eq!(
            symmetrize(&w(&[Top, Unit])),
            class(&[(&[Top, Unit], 1), (&[Unit, Top], 1)])
        );
        assert_eq!(
            symmetrize(&w(&[Odd(1), Odd(2)])),
            class(&[(&[Odd(1), Odd(2)], 1), (&[Odd(2), Odd(1)], -1)])
        );
        assert_eq!(
            symmetrize(&w(&[Odd(1), Unit])),
            class(&[(&[Odd(1), Unit], 1), (&[Unit, Odd(1)], 1)])
        );
        assert!(symmetrize(&w(&[Odd(1), Odd(1)])).is_zero());
    }

    #[test]
    fn invariance() {
        assert!(is_invariant(&symmetrize(&w(&[Odd(1), Top, Unit]))));
        assert!(!is_invariant(&class(&[(&[Odd(1), Unit], 1)])));
    }

    /// Every symmetrized word for the given genus and slot count.
    fn all_symmetrized(g: u8, d: usize) -> Vec<TensorClass> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << (2 * g)) {
            let odd: Vec<u8> = (1..=2 * g).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            if odd.len() > d {
                continue;
            }
            for t in 0..=d - odd.len() {
                out.push(symmetrize(&representative_word(&odd, t, d)));
            }
        }
        out
    }

    #[test]
    fn invariant_products_are_invariant() {
        for g in 1..=3u8 {
            for d in 1..=3 {
                let classes = all_symmetrized(g, d);
                for a in &classes {
                    for b in &classes {
                        let p = a.mul(g, b).unwrap();
                        assert!(is_invariant(&p), "g={g} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn graded_commutativity() {
        let g = 2u8;
        let classes = all_symmetrized(g, 2);
        for a in &classes {
            for b in &classes {
                let (Some((wa, _)), Some((wb, _))) = (a.terms().next(), b.terms().next()) else {
                    continue;
                };
                let s = if wa.degree() * wb.degree() % 2 == 0 { 1 } else { -1 };
                let mut signed_ba = TensorClass::zero();
                signed_ba.add(&b.mul(g, a).unwrap(), &int(s));
                assert_eq!(a.mul(g, b).unwrap(), signed_ba);
            }
        }
    }
}
