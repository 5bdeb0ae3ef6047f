//! Built-in Lie conformal algebra presentations.

use std::collections::BTreeMap;

use crate::scalar::{rat, rat_int, PolyScalar, Symbol};
use crate::twist::CosetZ;
use crate::{Error, Result};

use super::{Central, Generator, LcaElement, LcaSpec, Parity};

/// `virasoro` or `current_sl2` (aliases `vir`, `sl2`).
pub fn preset(name: &str) -> Result<LcaSpec> {
    match name {
        "virasoro" | "vir" => virasoro(),
        "current_sl2" | "cur_sl2" | "sl2" => current_sl2(),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

/// The Virasoro Lie conformal algebra: one even generator L of weight
/// 2, central C. Table: L_(0)L = TL, L_(1)L = 2L, L_(3)L = C/2.
fn virasoro() -> Result<LcaSpec> {
    let generators = vec![Generator {
        id: "L".to_string(),
        weight: rat_int(2),
        parity: Parity::Even,
        coset: CosetZ::zero(),
    }];
    let centrals = vec![Central { id: "C".to_string(), symbol: Symbol::C }];
    let mut bracket = BTreeMap::new();
    let mut tl = LcaElement::zero();
    tl.add_term(1, 0, PolyScalar::one());
    bracket.insert((0, 0, 0), tl);
    let mut two_l = LcaElement::zero();
    two_l.add_term(0, 0, PolyScalar::from_int(2));
    bracket.insert((0, 0, 1), two_l);
    bracket.insert((0, 0, 3), LcaElement::central(0, PolyScalar::from_rat(rat(1, 2))));
    LcaSpec::new("virasoro", generators, centrals, bracket)
}

/// The current Lie conformal algebra of sl2 with the bilinear form
/// normalized by (e, f) = 1, (h, h) = 2. Generators e, h, f of weight
/// 1, central K. Table: a_(0)b = [a, b], a_(1)b = (a, b) K.
fn current_sl2() -> Result<LcaSpec> {
    let ids = ["e", "h", "f"];
    let generators = ids
        .iter()
        .map(|id| Generator {
            id: id.to_string(),
            weight: rat_int(1),
            parity: Parity::Even,
            coset: CosetZ::zero(),
        })
        .collect();
    let centrals = vec![Central { id: "K".to_string(), symbol: Symbol::K }];
    let (e, h, f) = (0usize, 1usize, 2usize);
    let mut bracket = BTreeMap::new();
    let mut lie = |a: usize, b: usize, val: Vec<(usize, i64)>| {
        let mut elem = LcaElement::zero();
        for (g, c) in val {
            elem.add_term(0, g, PolyScalar::from_int(c));
        }
        bracket.insert((a, b, 0), elem);
    };
    // [e,f] = h, [h,e] = 2e, [h,f] = -2f, and the antisymmetric mates
    lie(e, f, vec![(h, 1)]);
    lie(f, e, vec![(h, -1)]);
    lie(h, e, vec![(e, 2)]);
    lie(e, h, vec![(e, -2)]);
    lie(h, f, vec![(f, -2)]);
    lie(f, h, vec![(f, 2)]);
    // symmetric form: (e,f) = (f,e) = 1, (h,h) = 2
    bracket.insert((e, f, 1), LcaElement::central(0, PolyScalar::one()));
    bracket.insert((f, e, 1), LcaElement::central(0, PolyScalar::one()));
    bracket.insert((h, h, 1), LcaElement::central(0, PolyScalar::from_int(2)));
    LcaSpec::new("current_sl2", generators, centrals, bracket)
}
