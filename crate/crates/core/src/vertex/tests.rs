use super::jspan::{j_span, t_reduce_symbolic};
use super::suites::{verify_suite, SuiteConfig, SuiteId};
use super::*;
use crate::lca::preset;
use crate::report::CaseStatus;
use crate::scalar::{rat, Symbol};

fn vir() -> VertexAlgebra {
    VertexAlgebra::new(preset("virasoro").unwrap()).unwrap()
}

fn sl2() -> VertexAlgebra {
    VertexAlgebra::new(preset("current_sl2").unwrap()).unwrap()
}

fn omega(a: &VertexAlgebra) -> VState {
    a.generator_state(0)
}

const LIM: i64 = 40;

#[test]
fn basis_word_counts_are_virasoro_characters() {
    let a = vir();
    // dim V_n = partitions of n into parts >= 2: 1,0,1,1,2,2,4 for n=0..6
    let basis = a.basis_words(6);
    let mut by_weight = std::collections::BTreeMap::new();
    for w in &basis {
        *by_weight.entry(a.word_weight(w)).or_insert(0usize) += 1;
    }
    assert_eq!(by_weight.get(&0), Some(&1));
    assert_eq!(by_weight.get(&1), None);
    assert_eq!(by_weight.get(&2), Some(&1));
    assert_eq!(by_weight.get(&3), Some(&1));
    assert_eq!(by_weight.get(&4), Some(&2));
    assert_eq!(by_weight.get(&5), Some(&2));
    assert_eq!(by_weight.get(&6), Some(&4));
}

#[test]
fn nth_products_reproduce_the_table() {
    let a = vir();
    let w = omega(&a);
    // L_(0)L = TL, L_(1)L = 2L, L_(3)L = (c/2) vac
    let p0 = a.nth_product(&w, &w, 0, LIM).unwrap();
    assert_eq!(p0, a.translate(&w));
    let p1 = a.nth_product(&w, &w, 1, LIM).unwrap();
    assert_eq!(p1, w.scale(&PolyScalar::from_int(2)));
    assert!(a.nth_product(&w, &w, 2, LIM).unwrap().is_zero());
    let p3 = a.nth_product(&w, &w, 3, LIM).unwrap();
    assert_eq!(p3, VState::vacuum().scale(&PolyScalar::sym(Symbol::C).scale(&rat(1, 2))));
    assert!(a.nth_product(&w, &w, 4, LIM).unwrap().is_zero());
    // vacuum axiom
    for n in -3..=3 {
        let v = a.nth_product(&VState::vacuum(), &w, n, LIM).unwrap();
        if n == -1 {
            assert_eq!(v, w);
        } else {
            assert!(v.is_zero());
        }
    }
    // currents: e_(0)f = h, e_(1)f = k vac
    let s = sl2();
    let (e, h, f) = (s.generator_state(0), s.generator_state(1), s.generator_state(2));
    assert_eq!(s.nth_product(&e, &f, 0, LIM).unwrap(), h);
    assert_eq!(
        s.nth_product(&e, &f, 1, LIM).unwrap(),
        VState::vacuum().scale(&PolyScalar::sym(Symbol::K))
    );
}

#[test]
fn quantum_field_property() {
    // for fixed a, b the products vanish above the weight bound
    let a = vir();
    let basis = a.basis_words(4);
    for wa in &basis {
        for wb in &basis {
            let bound = a.word_weight(wa) + a.word_weight(wb);
            let sa = VState::from_word(wa.clone(), PolyScalar::one());
            let sb = VState::from_word(wb.clone(), PolyScalar::one());
            for n in bound..=bound + 3 {
                assert!(
                    a.nth_product(&sa, &sb, n, LIM).unwrap().is_zero(),
                    "a_(n)b nonzero at n={n}"
                );
            }
        }
    }
}

#[test]
fn translate_and_energy() {
    let a = vir();
    assert!(a.translate(&VState::vacuum()).is_zero());
    let w = omega(&a);
    let tw = a.translate(&w);
    assert_eq!(tw.max_weight(&a), Some(3));
    // T omega = omega_(-2) vac
    assert_eq!(tw, a.nth_product(&w, &VState::vacuum(), -2, LIM).unwrap());
    assert_eq!(a.energy(&w), w.scale(&PolyScalar::from_int(2)));
    // weight bookkeeping on products
    let basis = a.basis_words(5);
    for wa in &basis {
        for wb in &basis {
            for n in -3..=3 {
                let sa = VState::from_word(wa.clone(), PolyScalar::one());
                let sb = VState::from_word(wb.clone(), PolyScalar::one());
                let prod = a.nth_product(&sa, &sb, n, LIM).unwrap();
                let expect = a.word_weight(wa) + a.word_weight(wb) - n - 1;
                for wt in prod.weights(&a) {
                    assert_eq!(wt, expect);
                }
            }
        }
    }
}

#[test]
fn skew_symmetry_of_y() {
    // Y(b, z) a = e^{zT} Y(a, -z) b, coefficientwise:
    // b_(n) a = sum_j (-1)^(n+j+1) T^(j)/..  -- checked as
    // b_(n)a = (-1)^{n+1} sum_j (-1)^j T^(j)(a_(n+j)b)  with T^(j) = T^j/j!
    let a = vir();
    let basis = a.basis_words(4);
    for wa in &basis {
        for wb in &basis {
            let sa = VState::from_word(wa.clone(), PolyScalar::one());
            let sb = VState::from_word(wb.clone(), PolyScalar::one());
            let bound = a.word_weight(wa) + a.word_weight(wb);
            for n in -3..=bound {
                let lhs = a.nth_product(&sb, &sa, n, LIM).unwrap();
                let mut rhs = VState::zero();
                let mut fact = crate::scalar::rat_int(1);
                for j in 0..=(bound - n).max(0) {
                    if j > 0 {
                        fact *= crate::scalar::rat_int(j);
                    }
                    let mut term = a.nth_product(&sa, &sb, n + j, LIM).unwrap();
                    for _ in 0..j {
                        term = a.translate(&term);
                    }
                    let sign = if (n + j + 1).rem_euclid(2) == 0 { 1 } else { -1 };
                    rhs = rhs.add(&term.scale(&PolyScalar::from_rat(
                        crate::scalar::rat_int(sign) / &fact,
                    )));
                }
                assert_eq!(lhs, rhs, "skew-symmetry of Y failed at n={n}");
            }
        }
    }
}

#[test]
fn zhu_mode_examples() {
    let a = vir();
    let w = omega(&a);
    // omega_[-1] omega at p=0, h=1: w_(-1)w + 2 Tw + 2 w
    let got = a.zhu_mode(&w, &w, -1, 0, &Hbar::Value(crate::scalar::rat_int(1)), LIM).unwrap();
    let expect = a
        .nth_product(&w, &w, -1, LIM)
        .unwrap()
        .add(&a.translate(&w).scale(&PolyScalar::from_int(2)))
        .add(&w.scale(&PolyScalar::from_int(2)));
    assert_eq!(got, expect);
    // vac_[n] a = binom(p, -n-1) h^(-n-1) a
    for p in 0..=2i64 {
        for n in -4..=1i64 {
            let got = a.zhu_mode(&VState::vacuum(), &w, n, p, &Hbar::Symbolic, LIM).unwrap();
            let factor = crate::scalar::binom_rat(&crate::scalar::rat_int(p), -n - 1);
            let expect = w.scale(&PolyScalar::hbar_pow((-n - 1).max(0) as i32).scale(&factor));
            assert_eq!(got, expect, "vac_[{n}] at p={p}");
        }
    }
    // a_[n] vac = 0 for n >= 0
    for n in 0..=3 {
        assert!(a.zhu_mode(&w, &VState::vacuum(), n, 1, &Hbar::Symbolic, LIM).unwrap().is_zero());
    }
}

#[test]
fn star_p_examples() {
    let a = vir();
    let w = omega(&a);
    // vac *_p a = a exactly, for every p, symbolic h
    let basis = a.basis_words(5);
    for p in 0..=2 {
        for wd in &basis {
            let s = VState::from_word(wd.clone(), PolyScalar::one());
            let got = a.star_p(&VState::vacuum(), &s, p, &Hbar::Symbolic, LIM).unwrap();
            assert_eq!(got, s);
        }
    }
    // omega *_0 vac = omega exactly
    let got = a.star_p(&w, &VState::vacuum(), 0, &Hbar::Symbolic, LIM).unwrap();
    assert_eq!(got, w);
    // omega *_0 omega at h=1 equals omega_[-1]omega
    let got = a.star_p(&w, &w, 0, &Hbar::Value(crate::scalar::rat_int(1)), LIM).unwrap();
    let expect = a.zhu_mode(&w, &w, -1, 0, &Hbar::Value(crate::scalar::rat_int(1)), LIM).unwrap();
    assert_eq!(got, expect);
}

#[test]
fn hbar_bracket_two_forms_agree() {
    let a = vir();
    let basis = a.basis_words(5);
    for p in 0..=2 {
        for wa in &basis {
            for wb in &basis {
                if a.word_weight(wa) + a.word_weight(wb) > 5 {
                    continue;
                }
                let sa = VState::from_word(wa.clone(), PolyScalar::one());
                let sb = VState::from_word(wb.clone(), PolyScalar::one());
                let f1 = a.hbar_bracket(&sa, &sb, &Hbar::Symbolic, LIM).unwrap();
                let f2 =
                    a.hbar_bracket_via_zhu_modes(&sa, &sb, p, &Hbar::Symbolic, LIM).unwrap();
                assert_eq!(f1, f2, "the two [.,.]_h forms disagree at p={p}");
            }
        }
    }
    // [vac, a]_h = 0 and [omega, omega]_h at h=1 is T w + 2 w
    let w = omega(&a);
    assert!(a.hbar_bracket(&VState::vacuum(), &w, &Hbar::Symbolic, LIM).unwrap().is_zero());
    let got = a.hbar_bracket(&w, &w, &Hbar::Value(crate::scalar::rat_int(1)), LIM).unwrap();
    let expect = a.translate(&w).add(&w.scale(&PolyScalar::from_int(2)));
    assert_eq!(got, expect);
    // [(T + hH)a, b]_h = 0 exactly, symbolic h
    for wa in &basis {
        if wa.is_empty() {
            continue;
        }
        let sa = VState::from_word(wa.clone(), PolyScalar::one());
        let v = a.translate(&sa).add(&a.energy(&sa).scale(&PolyScalar::hbar_pow(1)));
        let got = a.hbar_bracket(&v, &omega(&a), &Hbar::Symbolic, LIM).unwrap();
        assert!(got.is_zero(), "[(T+hH)a, b]_h != 0 for a = {}", a.display_state(&sa));
    }
}

#[test]
fn commutator_consistency_with_mode_algebra() {
    // [a_(m), b_(k)] evaluated on states matches the mode-algebra
    // bracket for |m|, |k| <= 3, on the generator fields
    let v = vir();
    let w = omega(&v);
    let modes = crate::envelope::ModeAlgebra::new(preset("virasoro").unwrap()).unwrap();
    let basis = v.basis_words(4);
    for m in -3..=3i64 {
        for k in -3..=3i64 {
            for wx in &basis {
                let x = VState::from_word(wx.clone(), PolyScalar::one());
                // LHS: omega_(m+1)(omega_(k+1) x) - omega_(k+1)(omega_(m+1) x)
                // using weight modes L_m = omega_(m+1)
                let lhs = v
                    .apply_letter(0, k + 1, &x)
                    .pipe(|y| v.apply_letter(0, m + 1, &y))
                    .sub(&v.apply_letter(0, m + 1, &x).pipe(|y| v.apply_letter(0, k + 1, &y)));
                // RHS via the mode algebra bracket
                let br = modes.bracket_modes(
                    &modes.mode_i(0, m).unwrap(),
                    &modes.mode_i(0, k).unwrap(),
                );
                let mut rhs = VState::zero();
                for (word, c) in br.iter_terms() {
                    let mut acc = x.scale(c);
                    for op in word.iter().rev() {
                        let n_idx = crate::scalar::rat_floor_i64(&op.mode)
                            + v.gen_weight(op.gen)
                            - 1;
                        acc = v.apply_letter(op.gen, n_idx, &acc);
                    }
                    rhs = rhs.add(&acc);
                }
                assert_eq!(lhs, rhs, "commutator mismatch at m={m}, k={k}");
                let _ = w.clone();
            }
        }
    }
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(&Self) -> T) -> T {
        f(&self)
    }
}
impl Pipe for VState {}

#[test]
fn tind_star_formula() {
    // [(T + hH)a] *_p b = (2p+1) binom(-p-1, p) h^(-2p) a_[-2p-2]b, exactly
    let a = vir();
    let basis = a.basis_words(4);
    for p in 0..=2i64 {
        for wa in &basis {
            if wa.is_empty() {
                continue;
            }
            for wb in &basis {
                if a.word_weight(wa) + a.word_weight(wb) > 4 {
                    continue;
                }
                let sa = VState::from_word(wa.clone(), PolyScalar::one());
                let sb = VState::from_word(wb.clone(), PolyScalar::one());
                let v = a.translate(&sa).add(&a.energy(&sa).scale(&PolyScalar::hbar_pow(1)));
                let lhs = a.star_p(&v, &sb, p, &Hbar::Symbolic, LIM).unwrap();
                let factor = crate::scalar::binom_rat(&crate::scalar::rat_int(-p - 1), p)
                    * crate::scalar::rat_int(2 * p + 1);
                let rhs = a
                    .zhu_mode(&sa, &sb, -2 * p - 2, p, &Hbar::Symbolic, LIM)
                    .unwrap()
                    .scale(&PolyScalar::hbar_pow(-2 * p as i32).scale(&factor));
                assert_eq!(lhs, rhs, "p={p}");
            }
        }
    }
}

#[test]
fn ezt_truncation_in_t_span() {
    // T^(k) c - h^k binom(-Delta_c, k) c reduces to zero against the
    // (T + hH)-generators, symbolic h, k <= 4
    let a = vir();
    let w = omega(&a);
    let mut tk = w.clone();
    let mut fact = crate::scalar::rat_int(1);
    for k in 1..=4i64 {
        tk = a.translate(&tk);
        fact *= crate::scalar::rat_int(k);
        let tdiv = tk.scale(&PolyScalar::from_rat(crate::scalar::rat_int(1) / &fact));
        let expect = w.scale(
            &PolyScalar::hbar_pow(k as i32)
                .scale(&crate::scalar::binom_rat(&crate::scalar::rat_int(-2), k)),
        );
        let defect = tdiv.sub(&expect);
        let residual = t_reduce_symbolic(&a, &defect).unwrap();
        assert!(residual.is_zero(), "k={k} residual {}", a.display_state(&residual));
    }
}

#[test]
fn jspan_on_both_presets() {
    let a = vir();
    let span = j_span(&a, 1, 8, crate::scalar::rat_int(1)).unwrap();
    assert!(span.generator_count > 0);
    // omega survives in Z_1 too (it maps onto L_0 up to J)
    assert!(!span.contains(&a, &omega(&a)).unwrap());
    let s = sl2();
    let span = j_span(&s, 0, 4, crate::scalar::rat_int(1)).unwrap();
    assert!(!span.contains(&s, &s.generator_state(0)).unwrap());
}

#[test]
fn suites_smoke_virasoro_small() {
    // small-cutoff run of every suite at p in {0,1}; the acceptance
    // suite runs the full desk-scale grid
    let a = vir();
    let config = SuiteConfig {
        policy: TruncationPolicy { weight_cutoff: 4, series_order: 4 },
        hbar_values: vec![crate::scalar::rat_int(1)],
    };
    for suite in SuiteId::ALL {
        let records = verify_suite(&a, suite, &[0, 1], &config).unwrap();
        assert!(!records.is_empty(), "suite {} produced no cases", suite.name());
        for r in &records {
            assert!(
                r.status == CaseStatus::Pass || r.status == CaseStatus::Skipped,
                "suite {} case failed: {:?}",
                suite.name(),
                r
            );
        }
    }
}

#[test]
fn suites_smoke_sl2_tiny() {
    let s = sl2();
    let config = SuiteConfig {
        policy: TruncationPolicy { weight_cutoff: 2, series_order: 3 },
        hbar_values: vec![crate::scalar::rat_int(1)],
    };
    for suite in [SuiteId::Unit, SuiteId::Tind, SuiteId::Skew, SuiteId::Phi] {
        let records = verify_suite(&s, suite, &[0, 1], &config).unwrap();
        for r in &records {
            assert!(
                r.status == CaseStatus::Pass || r.status == CaseStatus::Skipped,
                "suite {} case failed: {:?}",
                suite.name(),
                r
            );
        }
    }
}

#[test]
fn truncation_breach_is_signaled() {
    let a = vir();
    let w = omega(&a);
    let r = a.nth_product(&w, &w, -5, 5);
    assert!(matches!(r, Err(crate::Error::TruncationBreach { .. })));
}
