//! The graded word algebra: indices, generators, monomials and elements,
//! the graded product and commutator, and the antiautomorphism `omega`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::coeff::Coeff;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("generator indices must differ, got E[{0},{0}]")]
    EqualGeneratorIndices(u32),
    #[error("signature mismatch: gl({0}|{1}) vs gl({2}|{3})")]
    SignatureMismatch(u32, u32, u32, u32),
    #[error("signature requires m >= 1 and n >= 1, got gl({0}|{1})")]
    InvalidSignature(u32, u32),
}

/// The algebra `U_q[gl(m|n)]` is fixed by the two block sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub m: u32,
    pub n: u32,
}

impl Signature {
    pub fn new(m: u32, n: u32) -> Result<Self, AlgebraError> {
        if m < 1 || n < 1 {
            return Err(AlgebraError::InvalidSignature(m, n));
        }
        Ok(Self { m, n })
    }

    pub fn total(&self) -> u32 {
        self.m + self.n
    }

    pub fn check_index(&self, a: u32) -> Result<(), AlgebraError> {
        if a < 1 || a > self.total() {
            return Err(AlgebraError::IndexOutOfRange {
                index: a,
                max: self.total(),
            });
        }
        Ok(())
    }

    /// Z_2 grading of an index: 0 for `a <= m`, 1 for `a > m`.
    pub fn parity(&self, a: u32) -> u8 {
        debug_assert!(a >= 1 && a <= self.total());
        if a <= self.m {
            0
        } else {
            1
        }
    }
}

/// A non-Cartan generator `E[row, col]`, `row != col`.
///
/// Lowering when `row > col`, raising when `row < col`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gen {
    pub row: u32,
    pub col: u32,
}

impl Gen {
    pub fn new(row: u32, col: u32, sig: &Signature) -> Result<Self, AlgebraError> {
        sig.check_index(row)?;
        sig.check_index(col)?;
        if row == col {
            return Err(AlgebraError::EqualGeneratorIndices(row));
        }
        Ok(Self { row, col })
    }

    pub fn is_lowering(&self) -> bool {
        self.row > self.col
    }

    pub fn is_raising(&self) -> bool {
        self.row < self.col
    }

    pub fn height(&self) -> u32 {
        self.row.abs_diff(self.col)
    }

    /// `sign(row - col)`: +1 for lowering, -1 for raising.
    pub fn index_sign(&self) -> i64 {
        if self.row > self.col {
            1
        } else {
            -1
        }
    }

    pub fn parity(&self, sig: &Signature) -> u8 {
        (sig.parity(self.row) + sig.parity(self.col)) % 2
    }

    pub fn transpose(&self) -> Self {
        Self {
            row: self.col,
            col: self.row,
        }
    }

    /// Sort key within its block: `(col, row)` for lowering letters,
    /// `(row, col)` for raising letters.
    fn block_key(&self) -> (u32, u32) {
        if self.is_lowering() {
            (self.col, self.row)
        } else {
            (self.row, self.col)
        }
    }
}

/// One letter of a raw word: a non-Cartan generator or a power of a single
/// Cartan generator. `half` counts half-steps, so `half = 2` is `K[index]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    Gen(Gen),
    Cartan { index: u32, half: i64 },
}

impl Letter {
    pub fn cartan(index: u32, half: i64) -> Self {
        Letter::Cartan { index, half }
    }

    pub fn parity(&self, sig: &Signature) -> u8 {
        match self {
            Letter::Gen(g) => g.parity(sig),
            Letter::Cartan { .. } => 0,
        }
    }

    /// Block rank in the normal-form convention:
    /// lowering letters, then Cartan letters, then raising letters.
    pub fn block_rank(&self) -> u8 {
        match self {
            Letter::Gen(g) if g.is_lowering() => 0,
            Letter::Cartan { .. } => 1,
            Letter::Gen(_) => 2,
        }
    }
}

// Total order realizing the normal-form convention; BTreeMap key order is
// therefore the printing order.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.block_rank()
            .cmp(&other.block_rank())
            .then_with(|| match (self, other) {
                (Letter::Gen(a), Letter::Gen(b)) => a.block_key().cmp(&b.block_key()),
                (Letter::Cartan { index: i, half: h }, Letter::Cartan { index: j, half: k }) => {
                    i.cmp(j).then(h.cmp(k))
                }
                _ => unreachable!("equal block ranks"),
            })
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Word = Vec<Letter>;

pub fn word_parity(word: &[Letter], sig: &Signature) -> u8 {
    word.iter().map(|l| l.parity(sig) as u32).sum::<u32>() as u8 % 2
}

/// The gl-weight of a word: `sum(e_row - e_col)` over its non-Cartan
/// letters; Cartans contribute zero.
pub fn word_weight(word: &[Letter], sig: &Signature) -> Vec<i64> {
    let mut w = vec![0i64; sig.total() as usize];
    for l in word {
        if let Letter::Gen(g) = l {
            w[(g.row - 1) as usize] += 1;
            w[(g.col - 1) as usize] -= 1;
        }
    }
    w
}

/// A finite weighted sum of words, the general (possibly raw, i.e. not yet
/// normal ordered) algebra element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    sig: Signature,
    terms: BTreeMap<Word, Coeff>,
}

impl Element {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            terms: BTreeMap::new(),
        }
    }

    /// The identity element (empty word, coefficient 1).
    pub fn identity(sig: Signature) -> Self {
        Self::monomial(sig, Vec::new(), Coeff::one())
    }

    pub fn monomial(sig: Signature, word: Word, coeff: Coeff) -> Self {
        let mut e = Self::zero(sig);
        e.add_term(word, coeff);
        e
    }

    pub fn gen(sig: Signature, g: Gen) -> Self {
        Self::monomial(sig, vec![Letter::Gen(g)], Coeff::one())
    }

    pub fn word(sig: Signature, word: Word) -> Self {
        Self::monomial(sig, word, Coeff::one())
    }

    pub fn scalar(sig: Signature, c: Coeff) -> Self {
        Self::monomial(sig, Vec::new(), c)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when the element is a pure scalar (zero or coefficient times
    /// the empty word).
    pub fn as_scalar(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => {
                let (w, c) = self.terms.iter().next().unwrap();
                w.is_empty().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, word: Word, coeff: Coeff) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            sig: self.sig,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(self.sig);
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k.mul(c));
        }
        out
    }

    fn check_sig(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.sig != other.sig {
            return Err(AlgebraError::SignatureMismatch(
                self.sig.m, self.sig.n, other.sig.m, other.sig.n,
            ));
        }
        Ok(())
    }

    /// Free bilinear product: word concatenation, no relations applied.
    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_sig(other)?;
        let mut out = Self::zero(self.sig);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// Graded commutator `[x, y] = xy - (-1)^([x][y]) yx`, extended
    /// bilinearly over homogeneous monomials.
    pub fn graded_commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_sig(other)?;
        let mut out = Self::zero(self.sig);
        for (w1, c1) in &self.terms {
            let p1 = word_parity(w1, &self.sig);
            for (w2, c2) in &other.terms {
                let p2 = word_parity(w2, &self.sig);
                let c = c1.mul(c2);
                let mut fwd = w1.clone();
                fwd.extend_from_slice(w2);
                out.add_term(fwd, c.clone());
                let mut bwd = w2.clone();
                bwd.extend_from_slice(w1);
                let back = if p1 * p2 == 1 { c } else { c.neg() };
                out.add_term(bwd, back);
            }
        }
        Ok(out)
    }

    /// The ungraded antiautomorphism: reverse each word, transpose every
    /// generator, invert every Cartan power, bar every coefficient.
    pub fn omega(&self) -> Self {
        let mut out = Self::zero(self.sig);
        for (w, c) in &self.terms {
            let word: Word = w
                .iter()
                .rev()
                .map(|l| match l {
                    Letter::Gen(g) => Letter::Gen(g.transpose()),
                    Letter::Cartan { index, half } => Letter::Cartan {
                        index: *index,
                        half: -half,
                    },
                })
                .collect();
            out.add_term(word, c.bar());
        }
        out
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E[{},{}]", self.row, self.col)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gen(g) => write!(f, "{}", g),
            Letter::Cartan { index, half } => match half {
                2 => write!(f, "K[{}]", index),
                h if h % 2 == 0 => write!(f, "K[{}]^{}", index, h / 2),
                h => write!(f, "K[{}]^({}/2)", index, h),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(m: u32, n: u32) -> Signature {
        Signature::new(m, n).unwrap()
    }

    fn gen(sig: &Signature, r: u32, c: u32) -> Gen {
        Gen::new(r, c, sig).unwrap()
    }

    #[test]
    fn grading_rules() {
        let s = sig(2, 1);
        assert_eq!(gen(&s, 3, 1).parity(&s), 1);
        assert_eq!(Letter::cartan(2, 2).parity(&s), 0);
        let s22 = sig(2, 2);
        assert_eq!(gen(&s22, 4, 3).parity(&s22), 0);
    }

    #[test]
    fn grading_additive_on_products() {
        let s = sig(2, 2);
        for r1 in 1..=4u32 {
            for c1 in 1..=4u32 {
                for r2 in 1..=4u32 {
                    for c2 in 1..=4u32 {
                        if r1 == c1 || r2 == c2 {
                            continue;
                        }
                        let w = vec![
                            Letter::Gen(gen(&s, r1, c1)),
                            Letter::Gen(gen(&s, r2, c2)),
                        ];
                        let expect =
                            (gen(&s, r1, c1).parity(&s) + gen(&s, r2, c2).parity(&s)) % 2;
                        assert_eq!(word_parity(&w, &s), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn multiply_identity_and_bilinearity() {
        let s = sig(2, 1);
        let e12 = Element::gen(s, gen(&s, 1, 2));
        let e21 = Element::gen(s, gen(&s, 2, 1));
        let id = Element::identity(s);
        assert_eq!(id.multiply(&e12).unwrap(), e12);

        let lhs = e12.add(&e21).unwrap().multiply(&e12).unwrap();
        let rhs = e12
            .multiply(&e12)
            .unwrap()
            .add(&e21.multiply(&e12).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);

        let scaled = e21
            .scale(&Coeff::q_pow(1))
            .multiply(&e12.scale(&Coeff::delta()))
            .unwrap();
        let mut expect = Element::zero(s);
        expect.add_term(
            vec![Letter::Gen(gen(&s, 2, 1)), Letter::Gen(gen(&s, 1, 2))],
            Coeff::q_pow(1).mul(&Coeff::delta()),
        );
        assert_eq!(scaled, expect);
    }

    #[test]
    fn signature_mismatch_rejected() {
        let a = Element::identity(sig(1, 1));
        let b = Element::identity(sig(2, 1));
        assert!(a.multiply(&b).is_err());
    }

    #[test]
    fn graded_commutator_signs() {
        // m=n=1: both letters odd, anticommutator
        let s = sig(1, 1);
        let e12 = Element::gen(s, gen(&s, 1, 2));
        let e21 = Element::gen(s, gen(&s, 2, 1));
        let br = e12.graded_commutator(&e21).unwrap();
        let mut expect = Element::zero(s);
        expect.add_term(
            vec![Letter::Gen(gen(&s, 1, 2)), Letter::Gen(gen(&s, 2, 1))],
            Coeff::one(),
        );
        expect.add_term(
            vec![Letter::Gen(gen(&s, 2, 1)), Letter::Gen(gen(&s, 1, 2))],
            Coeff::one(),
        );
        assert_eq!(br, expect);

        // m=2: both even, ordinary commutator
        let s2 = sig(2, 1);
        let e12 = Element::gen(s2, gen(&s2, 1, 2));
        let e21 = Element::gen(s2, gen(&s2, 2, 1));
        let br = e12.graded_commutator(&e21).unwrap();
        let mut expect = Element::zero(s2);
        expect.add_term(
            vec![Letter::Gen(gen(&s2, 1, 2)), Letter::Gen(gen(&s2, 2, 1))],
            Coeff::one(),
        );
        expect.add_term(
            vec![Letter::Gen(gen(&s2, 2, 1)), Letter::Gen(gen(&s2, 1, 2))],
            Coeff::one().neg(),
        );
        assert_eq!(br, expect);

        // [X, Id] = 0
        let x = e12.multiply(&e21).unwrap();
        assert!(x
            .graded_commutator(&Element::identity(s2))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn omega_examples() {
        let s = sig(2, 1);
        let e13 = Element::gen(s, gen(&s, 1, 3));
        let mut expect = Element::zero(s);
        expect.add_term(vec![Letter::Gen(gen(&s, 3, 1))], Coeff::one());
        assert_eq!(e13.omega(), expect);

        // omega(q K_1 E^1_2 E^2_3) = qbar E^3_2 E^2_1 Kbar_1
        let mut x = Element::zero(s);
        x.add_term(
            vec![
                Letter::cartan(1, 2),
                Letter::Gen(gen(&s, 1, 2)),
                Letter::Gen(gen(&s, 2, 3)),
            ],
            Coeff::q_pow(1),
        );
        let mut expect = Element::zero(s);
        expect.add_term(
            vec![
                Letter::Gen(gen(&s, 3, 2)),
                Letter::Gen(gen(&s, 2, 1)),
                Letter::cartan(1, -2),
            ],
            Coeff::q_pow(-1),
        );
        assert_eq!(x.omega(), expect);

        // involution
        let y = Element::gen(s, gen(&s, 2, 1)).scale(&Coeff::delta());
        assert_eq!(y.omega().omega(), y);
    }

    #[test]
    fn omega_antihomomorphism_on_monomials() {
        let s = sig(2, 2);
        let x = Element::word(
            s,
            vec![Letter::Gen(gen(&s, 1, 3)), Letter::cartan(2, 4)],
        );
        let y = Element::word(
            s,
            vec![Letter::Gen(gen(&s, 4, 2)), Letter::Gen(gen(&s, 3, 1))],
        );
        let lhs = x.multiply(&y).unwrap().omega();
        let rhs = y.omega().multiply(&x.omega()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_invariant_under_reversal_and_cartans() {
        let s = sig(2, 1);
        let w = vec![
            Letter::Gen(gen(&s, 3, 1)),
            Letter::cartan(2, 5),
            Letter::Gen(gen(&s, 1, 2)),
        ];
        let mut rev = w.clone();
        rev.reverse();
        assert_eq!(word_weight(&w, &s), word_weight(&rev, &s));
        let no_cartans: Word = w
            .iter()
            .filter(|l| matches!(l, Letter::Gen(_)))
            .cloned()
            .collect();
        assert_eq!(word_weight(&w, &s), word_weight(&no_cartans, &s));
        assert_eq!(word_weight(&[Letter::Gen(gen(&s, 3, 1))], &s), vec![-1, 0, 1]);
    }
}
