//! Named example polynomials used by tests, the acceptance harness and `selftest`.

use crate::error::Result;
use crate::mixedpoly::{parse, MixedPolynomial};

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    pub nvars: usize,
    /// Whether `text` is a full defining function `r` (with `w` last).
    pub surface: bool,
}

impl Fixture {
    pub fn poly(&self) -> Result<MixedPolynomial> {
        parse(self.text, self.nvars)
    }
}

/// Cusp model: a complex curve lies in the hypersurface.
pub const CUSP_MODEL: Fixture = Fixture { name: "cusp-model", text: "2 Re(z3) + |z1^3 - z2^2|^2", nvars: 3, surface: true };

/// Degenerate model whose types still agree with `ρ₁`.
pub const SEXTIC_PRODUCT_MODEL: Fixture =
    Fixture { name: "sextic-product-model", text: "2 Re(z3) + |z1|^2 |z2|^2 |z1 - z2|^2 + |z1|^10 + |z2|^10", nvars: 3, surface: true };

/// Nondegenerate model of type 8 built on the one-variable Kohn–Nirenberg polynomial.
pub const KN_MODEL: Fixture =
    Fixture { name: "kohn-nirenberg-model", text: "Re(w) + |z1|^8 + (15/7)|z1|^2 Re(z1)^6 + |z1 z2|^2 + |z2|^6", nvars: 3, surface: true };

pub const KOHN_NIRENBERG: Fixture = Fixture { name: "kohn-nirenberg", text: "|z1|^8 + (15/7)|z1|^2 Re(z1^6)", nvars: 1, surface: false };

pub const QUARTIC_EDGE: Fixture = Fixture { name: "quartic-edge", text: "|z1|^4 - 2|z1 z2|^2 + |z2|^4 + |z3|^4", nvars: 3, surface: false };

pub const DIAGONAL: Fixture = Fixture { name: "diagonal", text: "|z1|^2 + |z2|^4", nvars: 2, surface: false };

pub const SHIFTED_SQUARE: Fixture = Fixture { name: "shifted-square", text: "|z1 - z2|^2 + |z2|^4", nvars: 2, surface: false };

pub const SHIFTED_SQUARE_MODEL: Fixture =
    Fixture { name: "shifted-square-model", text: "Re(w) + |z1 - z2|^2 + |z2|^4", nvars: 3, surface: true };

pub const MCNEAL_MERNIK: Fixture =
    Fixture { name: "mcneal-mernik", text: "|z1|^2 Re(z1^2 - z2^3) + |z2|^2 Re(z2^2) - Re(z1^2 conj(z2))", nvars: 2, surface: false };

pub const SQUARED_DIFFERENCE: Fixture =
    Fixture { name: "squared-difference", text: "(|z1|^2 - |z2|^2)^2 + |z1|^8 |z2|^8", nvars: 2, surface: false };

pub const REINHARDT_TWO_FACETS: Fixture =
    Fixture { name: "reinhardt-two-facets", text: "|z1|^6 + |z2|^6 + |z1 z2|^2", nvars: 2, surface: false };

pub const PS_NOT_PSEUDOCONVEX: Fixture =
    Fixture { name: "ps-not-pseudoconvex", text: "|z1|^4 + 2|z1|^2 Re(z2) + |z2|^2", nvars: 2, surface: false };

pub const TYPE4_SIMPLE: Fixture = Fixture { name: "type4-simple", text: "|z1|^4 + |z2|^2", nvars: 2, surface: false };

pub const ALL: &[Fixture] = &[
    CUSP_MODEL,
    SEXTIC_PRODUCT_MODEL,
    KN_MODEL,
    KOHN_NIRENBERG,
    QUARTIC_EDGE,
    DIAGONAL,
    SHIFTED_SQUARE,
    SHIFTED_SQUARE_MODEL,
    MCNEAL_MERNIK,
    SQUARED_DIFFERENCE,
    REINHARDT_TWO_FACETS,
    PS_NOT_PSEUDOCONVEX,
    TYPE4_SIMPLE,
];

pub fn by_name(name: &str) -> Option<Fixture> {
    ALL.iter().copied().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse() {
        for f in ALL {
            let p = f.poly().unwrap();
            assert!(p.is_real(), "{}", f.name);
            assert_eq!(p.nvars(), f.nvars);
        }
        assert!(by_name("diagonal").is_some());
    }
}
