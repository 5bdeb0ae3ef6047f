//! Stand-alone verification of the combinatorial identities that drive
//! the Zhu-product calculus, as exact polynomial identities — symbolic
//! in gamma wherever the identity permits.
//!
//! Each check evaluates both sides with independent machinery where
//! possible: the summation side goes through [`binom`] directly, the
//! closed-form side through truncated-series coefficient extraction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::par::par_map;
use crate::report::{CaseRecord, CaseStatus};
use crate::scalar::{
    binom, rat_int, rat_to_string, ExponentValue, PolyScalar, Rat, Symbol, TruncatedSeries,
};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    LemmaA2,
    Sequals,
    Shortlem,
    GeomQ,
    StarDelta,
    BaexpCoeff,
}

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::LemmaA2 => "lemma-a2",
            IdentityId::Sequals => "sequals",
            IdentityId::Shortlem => "shortlem",
            IdentityId::GeomQ => "geom-q",
            IdentityId::StarDelta => "star-delta",
            IdentityId::BaexpCoeff => "baexp-coeff",
        }
    }

    pub fn from_name(s: &str) -> Option<IdentityId> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "lemma-a2" | "a2" => Some(IdentityId::LemmaA2),
            "sequals" => Some(IdentityId::Sequals),
            "shortlem" => Some(IdentityId::Shortlem),
            "geom-q" | "q" => Some(IdentityId::GeomQ),
            "star-delta" => Some(IdentityId::StarDelta),
            "baexp-coeff" | "baexp" => Some(IdentityId::BaexpCoeff),
            _ => None,
        }
    }
}

/// A parameter of an identity case: an exact rational or the marker for
/// the symbolic gamma mode.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParamValue {
    Rat(Rat),
    Symbolic,
}

impl ParamValue {
    fn render(&self) -> String {
        match self {
            ParamValue::Rat(r) => rat_to_string(r),
            ParamValue::Symbolic => "gamma".to_string(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Outcome {
    pub status: CaseStatus,
    pub lhs: String,
    pub rhs: String,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub params: BTreeMap<String, ParamValue>,
    pub outcome: Option<Outcome>,
}

impl IdentityCase {
    pub fn new(id: IdentityId) -> Self {
        IdentityCase { id, params: BTreeMap::new(), outcome: None }
    }

    pub fn with_int(mut self, name: &str, v: i64) -> Self {
        self.params.insert(name.into(), ParamValue::Rat(rat_int(v)));
        self
    }

    pub fn with_gamma(mut self, v: Option<Rat>) -> Self {
        let p = match v {
            Some(r) => ParamValue::Rat(r),
            None => ParamValue::Symbolic,
        };
        self.params.insert("gamma".into(), p);
        self
    }

    fn int_param(&self, name: &str) -> Result<i64> {
        use num::ToPrimitive;
        match self.params.get(name) {
            Some(ParamValue::Rat(r)) if r.is_integer() => {
                r.numer().to_i64().ok_or_else(|| Error::pre(format!("{name} out of range")))
            }
            Some(_) => Err(Error::pre(format!("parameter `{name}` must be an integer"))),
            None => Err(Error::pre(format!("missing parameter `{name}`"))),
        }
    }

    fn gamma_param(&self) -> ExponentValue {
        match self.params.get("gamma") {
            Some(ParamValue::Rat(r)) => ExponentValue::Rat(r.clone()),
            _ => ExponentValue::symbol(Symbol::Gamma),
        }
    }

    pub fn to_record(&self) -> CaseRecord {
        let mut rec = CaseRecord::new(format!("identity/{}", self.id.name()));
        for (k, v) in &self.params {
            rec = rec.input(k, v.render());
        }
        match &self.outcome {
            Some(o) => {
                rec.status = o.status;
                if o.status == CaseStatus::Fail {
                    rec.defect = Some(format!("lhs = {}, rhs = {}", o.lhs, o.rhs));
                }
                rec.note = o.note.clone();
                rec
            }
            None => rec.error("case was not evaluated"),
        }
    }
}

/// H_{gamma,n}(X, Y) = sum_{k=0}^{Y-1} binom(-X, k) binom(gamma+X, n+X+k).
pub fn h_sum(gamma: &ExponentValue, n: i64, x: i64, y: i64) -> Result<PolyScalar> {
    if x < 0 {
        return Err(Error::pre("h_sum requires X >= 0"));
    }
    if y < 1 {
        return Err(Error::pre("h_sum requires Y >= 1"));
    }
    let minus_x = ExponentValue::int(-x);
    let gamma_plus_x = gamma.shifted(&rat_int(x));
    let mut acc = PolyScalar::zero();
    for k in 0..y {
        acc += &(&binom(&minus_x, k) * &binom(&gamma_plus_x, n + x + k));
    }
    Ok(acc)
}

/// D_{gamma,n}(X, Y) = sum_{k=0}^{X-1} (-1)^{Y+k} binom(-Y, k) binom(gamma+k, n+Y+k).
pub fn d_sum(gamma: &ExponentValue, n: i64, x: i64, y: i64) -> Result<PolyScalar> {
    if x < 0 {
        return Err(Error::pre("d_sum requires X >= 0"));
    }
    if y < 1 {
        return Err(Error::pre("d_sum requires Y >= 1"));
    }
    let minus_y = ExponentValue::int(-y);
    let mut acc = PolyScalar::zero();
    for k in 0..x {
        let sign = if (y + k) % 2 == 0 { 1 } else { -1 };
        let gamma_plus_k = gamma.shifted(&rat_int(k));
        let term = &binom(&minus_y, k) * &binom(&gamma_plus_k, n + y + k);
        acc += &term.scale(&rat_int(sign));
    }
    Ok(acc)
}

/// Evaluate one identity case, filling in the outcome.
pub fn check_identity(mut case: IdentityCase) -> IdentityCase {
    let outcome = match evaluate(&case) {
        Ok(o) => o,
        Err(e) => Outcome {
            status: CaseStatus::Error,
            lhs: String::new(),
            rhs: String::new(),
            note: Some(e.to_string()),
        },
    };
    case.outcome = Some(outcome);
    case
}

fn verdict(lhs: PolyScalar, rhs: PolyScalar) -> Outcome {
    let status = if lhs == rhs { CaseStatus::Pass } else { CaseStatus::Fail };
    Outcome { status, lhs: lhs.to_string(), rhs: rhs.to_string(), note: None }
}

fn evaluate(case: &IdentityCase) -> Result<Outcome> {
    match case.id {
        IdentityId::LemmaA2 => {
            let gamma = case.gamma_param();
            let n = case.int_param("n")?;
            let x = case.int_param("X")?;
            let y = case.int_param("Y")?;
            let lhs = &h_sum(&gamma, n, x, y)? + &d_sum(&gamma, n, x, y)?;
            Ok(verdict(lhs, binom(&gamma, n)))
        }
        IdentityId::Sequals => {
            let gamma = case.gamma_param();
            let p = case.int_param("p")?;
            let j = case.int_param("j")?;
            let chi = case.int_param("chi")?;
            if p < 0 || j < 0 || !(chi == 0 || chi == 1) {
                return Err(Error::pre("sequals requires p,j >= 0 and chi in {0,1}"));
            }
            if p == 0 && chi == 1 {
                return Ok(Outcome {
                    status: CaseStatus::Skipped,
                    lhs: String::new(),
                    rhs: String::new(),
                    note: Some("special case p = 0, chi = 1 is dispensed with".into()),
                });
            }
            let mut rhs = PolyScalar::zero();
            for k in 0..=(p - chi) {
                let first = &binom(&ExponentValue::int(-p), k)
                    * &binom(&gamma.shifted(&rat_int(p)), p + j + k + 1);
                let sign = if (p + k) % 2 == 0 { 1 } else { -1 };
                let second = &binom(&ExponentValue::int(-p - 1 + chi), k - 1 + chi)
                    * &binom(&gamma.shifted(&rat_int(k - 1 + chi)), p + 1 + j + k);
                rhs += &first;
                rhs += &second.scale(&rat_int(sign));
            }
            let lhs = binom(&gamma, j + 1);
            // Cross-check: the same value must arise as the A.2 instance
            // with (n, X, Y) = (j+1, p, p+1-chi).
            let via_a2 =
                &h_sum(&gamma, j + 1, p, p + 1 - chi)? + &d_sum(&gamma, j + 1, p, p + 1 - chi)?;
            let mut out = verdict(lhs, rhs);
            if via_a2 != binom(&gamma, j + 1) {
                out.status = CaseStatus::Fail;
                out.note = Some("A.2 instance disagrees with closed form".into());
            }
            Ok(out)
        }
        IdentityId::Shortlem => {
            let gamma = case.gamma_param();
            let p = case.int_param("p")?;
            let j = case.int_param("j")?;
            if p < 0 || j < 0 {
                return Err(Error::pre("shortlem requires p, j >= 0"));
            }
            let mut lhs = PolyScalar::zero();
            for k in 1..=p {
                lhs += &binom(&gamma.shifted(&rat_int(k - 1)), j);
            }
            let rhs =
                &binom(&gamma.shifted(&rat_int(p)), j + 1) - &binom(&gamma, j + 1);
            Ok(verdict(lhs, rhs))
        }
        IdentityId::GeomQ => {
            let p = case.int_param("p")?;
            let alpha = case.int_param("alpha")?;
            if p < 0 || alpha < 0 {
                return Err(Error::pre("geom-q requires p, alpha >= 0"));
            }
            let mut lhs = PolyScalar::zero();
            for k in 0..=alpha {
                lhs += &binom(&ExponentValue::int(-p - 1 - k), alpha - k);
            }
            let rhs = binom(&ExponentValue::int(-p), alpha);
            // Series route: [xi^alpha] (1+xi)^-p, independently of binom.
            let order = alpha as usize;
            let series = TruncatedSeries::one_plus_xi_pow(&ExponentValue::int(-p), order);
            let mut out = verdict(lhs, rhs);
            if series.coeff_extract(alpha)? != binom(&ExponentValue::int(-p), alpha) {
                out.status = CaseStatus::Fail;
                out.note = Some("series route disagrees".into());
            }
            Ok(out)
        }
        IdentityId::StarDelta => {
            let p = case.int_param("p")?;
            let alpha = case.int_param("alpha")?;
            if p < 0 || alpha < 0 {
                return Err(Error::pre("star-delta requires p >= 0 and 0 <= alpha <= p"));
            }
            if alpha > p {
                return Err(Error::pre("star-delta requires alpha <= p"));
            }
            let mut lhs = PolyScalar::zero();
            for j in 0..=alpha {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let term = &binom(&ExponentValue::int(-p - 1), alpha - j)
                    * &binom(&ExponentValue::int(-p - 1 - alpha + j), j);
                lhs += &term.scale(&rat_int(sign));
            }
            let rhs = PolyScalar::from_int(if alpha == 0 { 1 } else { 0 });
            // Series route: [xi^alpha] (1+xi)^(alpha-1).
            let series = TruncatedSeries::one_plus_xi_pow(
                &ExponentValue::int(alpha - 1),
                alpha as usize,
            );
            let series_val = series.coeff_extract(alpha)?;
            let mut out = verdict(lhs, rhs.clone());
            if series_val != rhs {
                out.status = CaseStatus::Fail;
                out.note = Some("series route disagrees".into());
            }
            Ok(out)
        }
        IdentityId::BaexpCoeff => {
            let p = case.int_param("p")?;
            let alpha = case.int_param("alpha")?;
            if p < 0 {
                return Err(Error::pre("baexp-coeff requires p >= 0"));
            }
            if alpha > p {
                return Err(Error::pre("baexp-coeff requires alpha <= p"));
            }
            let mut lhs = PolyScalar::zero();
            for j in 0..=(p - alpha) {
                lhs += &(&binom(&ExponentValue::int(-p - 1), alpha + j)
                    * &binom(&ExponentValue::int(p - alpha), j));
            }
            let rhs = binom(&ExponentValue::int(-alpha - 1), p);
            Ok(verdict(lhs, rhs))
        }
    }
}

/// The fixed default grids used by the acceptance run; each is
/// overridable from the CLI.
pub fn default_cases(id: IdentityId) -> Vec<IdentityCase> {
    let mut cases = Vec::new();
    match id {
        IdentityId::LemmaA2 => {
            for n in -4..=8 {
                for x in 0..=6 {
                    for y in 1..=6 {
                        cases.push(
                            IdentityCase::new(id)
                                .with_gamma(None)
                                .with_int("n", n)
                                .with_int("X", x)
                                .with_int("Y", y),
                        );
                    }
                }
            }
        }
        IdentityId::Sequals => {
            for p in 0..=4 {
                for j in 0..=6 {
                    for chi in 0..=1 {
                        cases.push(
                            IdentityCase::new(id)
                                .with_gamma(None)
                                .with_int("p", p)
                                .with_int("j", j)
                                .with_int("chi", chi),
                        );
                    }
                }
            }
        }
        IdentityId::Shortlem => {
            for p in 0..=6 {
                for j in 0..=8 {
                    cases.push(
                        IdentityCase::new(id).with_gamma(None).with_int("p", p).with_int("j", j),
                    );
                }
            }
        }
        IdentityId::GeomQ => {
            for p in 0..=6 {
                for alpha in 0..=6 {
                    cases.push(IdentityCase::new(id).with_int("p", p).with_int("alpha", alpha));
                }
            }
        }
        IdentityId::StarDelta => {
            for p in 0..=4 {
                for alpha in 0..=p {
                    cases.push(IdentityCase::new(id).with_int("p", p).with_int("alpha", alpha));
                }
            }
        }
        IdentityId::BaexpCoeff => {
            for p in 0..=5 {
                for alpha in -3..=p {
                    cases.push(IdentityCase::new(id).with_int("p", p).with_int("alpha", alpha));
                }
            }
        }
    }
    cases
}

/// Rational-gamma spot values for the secondary checking mode.
pub fn gamma_spot_values() -> Vec<Rat> {
    vec![rat_int(0), crate::scalar::rat(1, 2), crate::scalar::rat(-3, 2), rat_int(7)]
}

/// Run a batch of cases, case-parallel, preserving order.
pub fn run_cases(cases: Vec<IdentityCase>) -> Vec<IdentityCase> {
    par_map(cases, check_identity)
}
