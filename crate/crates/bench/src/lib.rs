//! Shared helpers for the criterion benchmarks.

pub use uqglmn_core::*;

/// The maximally nonsimple product `E^{m+n}_1 * E^1_{m+n}`.
pub fn maximal_product(m: u32, n: u32) -> Element {
    let sig = Signature::new(m, n).expect("valid signature");
    let t = sig.total();
    Element::word(
        sig,
        vec![
            Letter::Gen(Gen::new(t, 1, &sig).expect("valid")),
            Letter::Gen(Gen::new(1, t, &sig).expect("valid")),
        ],
    )
}
