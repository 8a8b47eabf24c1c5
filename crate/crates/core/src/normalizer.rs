//! PBW straightening: rewrite raw elements into the canonical shape
//! (sorted lowering word) * (Cartan block) * (sorted raising word).

use thiserror::Error;

use crate::algebra::{Element, Letter, Signature, Word};
use crate::coeff::Coeff;
use crate::rulebook;

#[derive(Debug, Clone)]
pub struct NormalOrderConfig {
    /// Rewrite-step budget per element; the straightening loop has no
    /// formal termination proof, so a blown budget is reported instead of
    /// spinning.
    pub max_rewrite_steps: u64,
}

impl Default for NormalOrderConfig {
    fn default() -> Self {
        Self {
            max_rewrite_steps: 10_000_000,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("rewrite budget exceeded while straightening monomial {word}")]
    BudgetExceeded { word: String },
}

fn format_word(word: &[Letter]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join("*")
}

enum Reduction {
    /// Merge/swap/drop handled without the rule table.
    DropUnitCartan(usize),
    /// Apply the exchange table to positions (i, i+1).
    Exchange(usize),
    /// Adjacent equal odd letters: the monomial vanishes.
    Annihilate,
}

/// Leftmost reducible position, or `None` when the word is normal.
fn first_reducible(word: &[Letter], sig: &Signature) -> Option<Reduction> {
    for (i, l) in word.iter().enumerate() {
        if let Letter::Cartan { half: 0, .. } = l {
            return Some(Reduction::DropUnitCartan(i));
        }
    }
    for i in 0..word.len().saturating_sub(1) {
        let (x, y) = (&word[i], &word[i + 1]);
        match (x, y) {
            (Letter::Cartan { index: a, .. }, Letter::Cartan { index: b, .. }) => {
                if a >= b {
                    // merge (a == b) or plain swap (a > b)
                    return Some(Reduction::Exchange(i));
                }
            }
            (Letter::Cartan { .. }, Letter::Gen(g)) => {
                if g.is_lowering() {
                    return Some(Reduction::Exchange(i));
                }
            }
            (Letter::Gen(g), Letter::Cartan { .. }) => {
                if g.is_raising() {
                    return Some(Reduction::Exchange(i));
                }
            }
            (Letter::Gen(a), Letter::Gen(b)) => {
                if a == b {
                    if a.parity(sig) == 1 {
                        return Some(Reduction::Annihilate);
                    }
                    continue;
                }
                let out_of_order = match (a.is_lowering(), b.is_lowering()) {
                    (true, false) => false,
                    (false, true) => true,
                    _ => x > y,
                };
                if out_of_order {
                    return Some(Reduction::Exchange(i));
                }
            }
        }
    }
    None
}

/// True when every monomial word already has the canonical shape.
pub fn is_normal(e: &Element) -> bool {
    let sig = e.signature();
    e.terms()
        .all(|(w, _)| first_reducible(w, &sig).is_none())
}

/// Straighten a raw element into its canonical normal-ordered form.
pub fn normal_order(e: &Element, cfg: &NormalOrderConfig) -> Result<Element, NormalizeError> {
    let sig = e.signature();
    let mut out = Element::zero(sig);
    let mut work: Vec<(Word, Coeff)> =
        e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut steps: u64 = 0;
    while let Some((word, coeff)) = work.pop() {
        match first_reducible(&word, &sig) {
            None => out.add_term(word, coeff),
            Some(red) => {
                steps += 1;
                if steps > cfg.max_rewrite_steps {
                    return Err(NormalizeError::BudgetExceeded {
                        word: format_word(&word),
                    });
                }
                match red {
                    Reduction::Annihilate => {}
                    Reduction::DropUnitCartan(i) => {
                        let mut w = word;
                        w.remove(i);
                        work.push((w, coeff));
                    }
                    Reduction::Exchange(i) => {
                        let repl = rulebook::exchange(&word[i], &word[i + 1], &sig);
                        for (rw, rc) in repl.terms() {
                            let mut w =
                                Vec::with_capacity(word.len() - 2 + rw.len());
                            w.extend_from_slice(&word[..i]);
                            w.extend_from_slice(rw);
                            w.extend_from_slice(&word[i + 2..]);
                            work.push((w, coeff.mul(rc)));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gen, Signature};

    fn sig(m: u32, n: u32) -> Signature {
        Signature::new(m, n).unwrap()
    }

    fn gen(s: &Signature, r: u32, c: u32) -> Letter {
        Letter::Gen(Gen::new(r, c, s).unwrap())
    }

    fn no(e: &Element) -> Element {
        normal_order(e, &NormalOrderConfig::default()).unwrap()
    }

    #[test]
    fn transpose_pair_even() {
        // m=2: E^1_2 E^2_1 -> E^2_1 E^1_2 + (1/Delta)(K_1 Kbar_2 - Kbar_1 K_2)
        let s = sig(2, 1);
        let x = Element::word(s, vec![gen(&s, 1, 2), gen(&s, 2, 1)]);
        let mut expect = Element::zero(s);
        expect.add_term(vec![gen(&s, 2, 1), gen(&s, 1, 2)], Coeff::one());
        expect.add_term(
            vec![Letter::cartan(1, 2), Letter::cartan(2, -2)],
            Coeff::delta_bar(),
        );
        expect.add_term(
            vec![Letter::cartan(1, -2), Letter::cartan(2, 2)],
            Coeff::delta_bar().neg(),
        );
        assert_eq!(no(&x), expect);
    }

    #[test]
    fn odd_simple_square_vanishes() {
        let s = sig(1, 1);
        let x = Element::word(s, vec![gen(&s, 1, 2), gen(&s, 1, 2)]);
        assert!(no(&x).is_zero());
    }

    #[test]
    fn cartan_block_merges() {
        let s = sig(1, 1);
        let x = Element::word(s, vec![Letter::cartan(1, 2), Letter::cartan(1, -2)]);
        assert_eq!(no(&x), Element::identity(s));
        let y = Element::word(s, vec![Letter::cartan(2, 2), Letter::cartan(1, 2)]);
        let mut expect = Element::zero(s);
        expect.add_term(vec![Letter::cartan(1, 2), Letter::cartan(2, 2)], Coeff::one());
        assert_eq!(no(&y), expect);
    }

    #[test]
    fn lowering_then_cartan_is_normal() {
        let s = sig(2, 1);
        let x = Element::word(s, vec![gen(&s, 2, 1), Letter::cartan(1, 2)]);
        assert!(is_normal(&x));
        assert_eq!(no(&x), x);
    }

    #[test]
    fn raising_sifts_past_cartan() {
        // E^1_2 K_1 = qbar_1 K_1 E^1_2, i.e. K_1 E^1_2 picks up q_1
        let s = sig(2, 1);
        let x = Element::word(s, vec![gen(&s, 1, 2), Letter::cartan(1, 2)]);
        let mut expect = Element::zero(s);
        expect.add_term(
            vec![Letter::cartan(1, 2), gen(&s, 1, 2)],
            Coeff::q_pow(-1),
        );
        assert_eq!(no(&x), expect);
    }

    #[test]
    fn is_normal_examples() {
        let s = sig(2, 1);
        assert!(is_normal(&Element::word(
            s,
            vec![gen(&s, 2, 1), gen(&s, 1, 2)]
        )));
        assert!(!is_normal(&Element::word(
            s,
            vec![gen(&s, 1, 2), gen(&s, 2, 1)]
        )));
        // lowering block sorted by (col, row)
        assert!(is_normal(&Element::word(
            s,
            vec![gen(&s, 3, 1), gen(&s, 3, 2)]
        )));
        assert!(!is_normal(&Element::word(
            s,
            vec![gen(&s, 3, 2), gen(&s, 3, 1)]
        )));
    }

    #[test]
    fn q_commuting_lowering_pair() {
        // m=2,n=2: E^3_1 E^3_2 is already sorted and q-commutes with the
        // factor (-1)^([E^3_2]) q_3 = -qbar, so the reverse order picks up
        // the inverse factor -q
        let s = sig(2, 2);
        let sorted = Element::word(s, vec![gen(&s, 3, 1), gen(&s, 3, 2)]);
        assert_eq!(no(&sorted), sorted);
        let rev = Element::word(s, vec![gen(&s, 3, 2), gen(&s, 3, 1)]);
        let expect = sorted.scale(&Coeff::q_pow(1).neg());
        assert_eq!(no(&rev), expect);
    }

    #[test]
    fn nonsimple_odd_square_vanishes() {
        let s = sig(2, 1);
        let x = Element::word(s, vec![gen(&s, 3, 1), gen(&s, 3, 1)]);
        assert!(no(&x).is_zero());
    }

    #[test]
    fn lowering_then_raising_is_normal() {
        // m=2,n=1: E^3_1 E^1_2 already has the block shape.
        let s = sig(2, 1);
        let x = Element::word(s, vec![gen(&s, 3, 1), gen(&s, 1, 2)]);
        assert!(is_normal(&x));
        assert_eq!(no(&x), x);
    }

    #[test]
    fn chain_exchange_with_correction() {
        // m=2,n=1: E^1_2 E^3_1 = E^3_1 E^1_2 + [E^1_2, E^3_1]
        //        = E^3_1 E^1_2 - Kbar_2 K_1 E^3_2
        // and the correction normalizes to -q E^3_2 K_1 Kbar_2.
        let s = sig(2, 1);
        let x = Element::word(s, vec![gen(&s, 1, 2), gen(&s, 3, 1)]);
        let mut expect = Element::zero(s);
        expect.add_term(vec![gen(&s, 3, 1), gen(&s, 1, 2)], Coeff::one());
        expect.add_term(
            vec![gen(&s, 3, 2), Letter::cartan(1, 2), Letter::cartan(2, -2)],
            Coeff::q_pow(1).neg(),
        );
        assert_eq!(no(&x), expect);
    }

    #[test]
    fn median_pivot_chain_matches_splitting_rule() {
        // m=2,n=1: E^3_2 E^2_1 = E^3_1 + q_2 E^2_1 E^3_2 by the splitting
        // rule with pivot 2.
        let s = sig(2, 1);
        let x = Element::word(s, vec![gen(&s, 3, 2), gen(&s, 2, 1)]);
        let mut expect = Element::zero(s);
        expect.add_term(vec![gen(&s, 3, 1)], Coeff::one());
        expect.add_term(vec![gen(&s, 2, 1), gen(&s, 3, 2)], Coeff::q_pow(1));
        assert_eq!(no(&x), expect);
    }

    #[test]
    fn idempotent_on_mixed_input() {
        let s = sig(2, 2);
        let x = Element::word(
            s,
            vec![gen(&s, 1, 4), gen(&s, 4, 2), Letter::cartan(3, 2), gen(&s, 2, 3)],
        );
        let n1 = no(&x);
        assert_eq!(no(&n1), n1);
        assert!(is_normal(&n1));
    }

    #[test]
    fn budget_fires_with_tiny_budget() {
        let s = sig(2, 1);
        let x = Element::word(s, vec![gen(&s, 1, 2), gen(&s, 2, 1)]);
        let cfg = NormalOrderConfig {
            max_rewrite_steps: 0,
        };
        assert!(matches!(
            normal_order(&x, &cfg),
            Err(NormalizeError::BudgetExceeded { .. })
        ));
    }
}
