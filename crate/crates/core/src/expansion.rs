//! Recursive expansion of nonsimple generators into weighted words of
//! simple generators: `E^a_b = E^a_c E^c_b - q_c^sign(a-b) E^c_b E^a_c`
//! for any pivot `c` strictly between `a` and `b`.

use crate::algebra::{Element, Gen, Letter, Signature};
use crate::coeff::Coeff;

/// Which pivot index to split a nonsimple generator at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Adjacent to the row index: `c = row - sign(row - col)`.
    Row,
    /// Adjacent to the column index: `c = col + sign(row - col)`.
    Col,
}

impl Default for PivotStrategy {
    fn default() -> Self {
        PivotStrategy::Row
    }
}

pub fn height_of(g: &Gen) -> u32 {
    g.height()
}

fn pick_pivot(g: &Gen, strategy: PivotStrategy) -> u32 {
    match strategy {
        PivotStrategy::Row => (g.row as i64 - g.index_sign()) as u32,
        PivotStrategy::Col => (g.col as i64 + g.index_sign()) as u32,
    }
}

/// Expand one generator with an explicit first pivot, recursing with
/// `strategy` below that. The pivot must lie strictly between the indices.
pub fn expand_gen_with_pivot(
    g: &Gen,
    pivot: u32,
    strategy: PivotStrategy,
    sig: &Signature,
) -> Element {
    debug_assert!(pivot > g.row.min(g.col) && pivot < g.row.max(g.col));
    let top = Gen {
        row: g.row,
        col: pivot,
    };
    let bottom = Gen {
        row: pivot,
        col: g.col,
    };
    let top = expand_gen(&top, strategy, sig);
    let bottom = expand_gen(&bottom, strategy, sig);
    let fwd = top.multiply(&bottom).expect("same signature");
    let q_c = Coeff::q_sub_pow_half(sig.parity(pivot), 2 * g.index_sign());
    let bwd = bottom.multiply(&top).expect("same signature").scale(&q_c);
    fwd.sub(&bwd).expect("same signature")
}

/// Fully expand one generator to simple letters.
pub fn expand_gen(g: &Gen, strategy: PivotStrategy, sig: &Signature) -> Element {
    if g.height() <= 1 {
        return Element::gen(*sig, *g);
    }
    expand_gen_with_pivot(g, pick_pivot(g, strategy), strategy, sig)
}

/// Expand every nonsimple letter of an element; Cartans and simple letters
/// pass through unchanged.
pub fn expand_ns(e: &Element, strategy: PivotStrategy) -> Element {
    let sig = e.signature();
    let mut out = Element::zero(sig);
    for (word, coeff) in e.terms() {
        let mut acc = Element::scalar(sig, coeff.clone());
        for letter in word {
            let factor = match letter {
                Letter::Gen(g) => expand_gen(g, strategy, &sig),
                l @ Letter::Cartan { .. } => {
                    Element::monomial(sig, vec![*l], Coeff::one())
                }
            };
            acc = acc.multiply(&factor).expect("same signature");
        }
        out = out.add(&acc).expect("same signature");
    }
    out
}

/// All admissible first pivots for a nonsimple generator.
pub fn admissible_pivots(g: &Gen) -> impl Iterator<Item = u32> {
    (g.row.min(g.col) + 1)..g.row.max(g.col)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;

    fn sig(m: u32, n: u32) -> Signature {
        Signature::new(m, n).unwrap()
    }

    fn gen(s: &Signature, r: u32, c: u32) -> Gen {
        Gen::new(r, c, s).unwrap()
    }

    #[test]
    fn lowering_split() {
        // E^3_1 with pivot 2: E^3_2 E^2_1 - q_2 E^2_1 E^3_2
        let s = sig(2, 1);
        let e = expand_gen_with_pivot(&gen(&s, 3, 1), 2, PivotStrategy::Row, &s);
        let mut expect = Element::zero(s);
        expect.add_term(
            vec![Letter::Gen(gen(&s, 3, 2)), Letter::Gen(gen(&s, 2, 1))],
            Coeff::one(),
        );
        expect.add_term(
            vec![Letter::Gen(gen(&s, 2, 1)), Letter::Gen(gen(&s, 3, 2))],
            Coeff::q_sub(0).neg(),
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn raising_split_uses_inverse_power() {
        // E^1_3 with pivot 2: E^1_2 E^2_3 - qbar_2 E^2_3 E^1_2
        let s = sig(2, 1);
        let e = expand_gen_with_pivot(&gen(&s, 1, 3), 2, PivotStrategy::Row, &s);
        let mut expect = Element::zero(s);
        expect.add_term(
            vec![Letter::Gen(gen(&s, 1, 2)), Letter::Gen(gen(&s, 2, 3))],
            Coeff::one(),
        );
        expect.add_term(
            vec![Letter::Gen(gen(&s, 2, 3)), Letter::Gen(gen(&s, 1, 2))],
            Coeff::q_pow(-1).neg(),
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn simple_passes_through() {
        let s = sig(1, 1);
        let g12 = gen(&s, 1, 2);
        assert_eq!(
            expand_gen(&g12, PivotStrategy::Row, &s),
            Element::gen(s, g12)
        );
    }

    #[test]
    fn heights() {
        let s = sig(3, 3);
        assert_eq!(height_of(&gen(&s, 6, 1)), 5);
        assert_eq!(height_of(&gen(&s, 1, 2)), 1);
        assert_eq!(height_of(&gen(&s, 2, 5)), 3);
    }

    #[test]
    fn expansion_is_simple_only() {
        let s = sig(3, 2);
        let e = expand_gen(&gen(&s, 5, 1), PivotStrategy::Col, &s);
        for (word, _) in e.terms() {
            for l in word {
                if let Letter::Gen(g) = l {
                    assert_eq!(g.height(), 1);
                }
            }
        }
        // height h expands into at most 2^(h-1) words
        assert!(e.num_terms() <= 8);
    }
}
