//! Lie conformal algebra presentations: generators with weights and
//! degree cosets, central elements, a finitely supported bracket table,
//! lambda-brackets extended by sesquilinearity, and exact axiom
//! checking (skew-commutativity and Jacobi as identities of
//! polynomials in lambda and mu with algebra-valued coefficients).

mod json;
mod presets;

pub use json::{from_json, to_json, LCA_FORMAT};
pub use presets::preset;

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::scalar::{binom_int, rat_int, rat_to_string, PolyScalar, Rat, Symbol};
use crate::twist::{CosetZ, TwistData};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub id: String,
    pub weight: Rat,
    pub parity: Parity,
    pub coset: CosetZ,
}

#[derive(Clone, Debug)]
pub struct Central {
    pub id: String,
    /// The scalar symbol this central specializes to in enveloping
    /// computations (C -> c, K -> k).
    pub symbol: Symbol,
}

/// An element of R as a C[T]-module: a sum of T-power translates of
/// generators plus central terms. Central terms carry no T-power
/// (TC = 0). Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LcaElement {
    terms: BTreeMap<(u32, usize), PolyScalar>,
    centrals: BTreeMap<usize, PolyScalar>,
}

impl LcaElement {
    pub fn zero() -> Self {
        LcaElement::default()
    }

    pub fn generator(idx: usize) -> Self {
        let mut e = LcaElement::default();
        e.terms.insert((0, idx), PolyScalar::one());
        e
    }

    pub fn central(idx: usize, coeff: PolyScalar) -> Self {
        let mut e = LcaElement::default();
        e.add_central(idx, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.centrals.is_empty()
    }

    pub fn add_term(&mut self, tpow: u32, gen: usize, coeff: PolyScalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((tpow, gen)).or_insert_with(PolyScalar::zero);
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&(tpow, gen));
        }
    }

    pub fn add_central(&mut self, idx: usize, coeff: PolyScalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.centrals.entry(idx).or_insert_with(PolyScalar::zero);
        *slot += &coeff;
        if slot.is_zero() {
            self.centrals.remove(&idx);
        }
    }

    pub fn add(&self, other: &LcaElement) -> LcaElement {
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.add_term(key.0, key.1, c.clone());
        }
        for (&idx, c) in &other.centrals {
            out.add_central(idx, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &PolyScalar) -> LcaElement {
        let mut out = LcaElement::default();
        for (&(t, g), c) in &self.terms {
            out.add_term(t, g, c * s);
        }
        for (&i, c) in &self.centrals {
            out.add_central(i, c * s);
        }
        out
    }

    pub fn scale_rat(&self, s: &Rat) -> LcaElement {
        self.scale(&PolyScalar::from_rat(s.clone()))
    }

    /// T acts by raising the T-power; central terms die.
    pub fn apply_t(&self, times: u32) -> LcaElement {
        if times == 0 {
            return self.clone();
        }
        let mut out = LcaElement::default();
        for (&(t, g), c) in &self.terms {
            out.add_term(t + times, g, c.clone());
        }
        out
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (u32, usize, &PolyScalar)> {
        self.terms.iter().map(|(&(t, g), c)| (t, g, c))
    }

    pub fn iter_centrals(&self) -> impl Iterator<Item = (usize, &PolyScalar)> {
        self.centrals.iter().map(|(&i, c)| (i, c))
    }
}

/// A validated Lie conformal algebra presentation.
#[derive(Clone, Debug)]
pub struct LcaSpec {
    pub name: String,
    pub generators: Vec<Generator>,
    pub centrals: Vec<Central>,
    /// (a, b, j) -> a_(j) b, finitely supported.
    bracket: BTreeMap<(usize, usize, i64), LcaElement>,
}

impl LcaSpec {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        centrals: Vec<Central>,
        bracket: BTreeMap<(usize, usize, i64), LcaElement>,
    ) -> Result<Self> {
        let spec = LcaSpec { name: name.into(), generators, centrals, bracket };
        spec.validate()?;
        Ok(spec)
    }

    pub fn gen_index(&self, id: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.id == id)
    }

    pub fn central_index(&self, id: &str) -> Option<usize> {
        self.centrals.iter().position(|c| c.id == id)
    }

    pub fn gen_count(&self) -> usize {
        self.generators.len()
    }

    pub fn weight(&self, gen: usize) -> &Rat {
        &self.generators[gen].weight
    }

    pub fn twist_data(&self, gen: usize) -> TwistData {
        TwistData::new(self.generators[gen].coset.clone(), self.generators[gen].weight.clone())
    }

    pub fn parity_sign(&self, a: usize, b: usize) -> i64 {
        match (self.generators[a].parity, self.generators[b].parity) {
            (Parity::Odd, Parity::Odd) => -1,
            _ => 1,
        }
    }

    pub fn is_even(&self) -> bool {
        self.generators.iter().all(|g| matches!(g.parity, Parity::Even))
    }

    /// a_(j) b from the table; absent entries are zero.
    pub fn bracket_entry(&self, a: usize, b: usize, j: i64) -> LcaElement {
        self.bracket.get(&(a, b, j)).cloned().unwrap_or_default()
    }

    /// Largest j with a nonzero table entry for the pair, or -1.
    pub fn bracket_top(&self, a: usize, b: usize) -> i64 {
        self.bracket
            .range((a, b, 0)..=(a, b, i64::MAX))
            .map(|(&(_, _, j), _)| j)
            .max()
            .unwrap_or(-1)
    }

    pub fn bracket_entries(&self) -> impl Iterator<Item = (usize, usize, i64, &LcaElement)> {
        self.bracket.iter().map(|(&(a, b, j), e)| (a, b, j, e))
    }

    fn validate(&self) -> Result<()> {
        for c in &self.centrals {
            if !matches!(c.symbol, Symbol::C | Symbol::K) {
                return Err(Error::SpecError(format!(
                    "central `{}` must map to symbol c or k",
                    c.id
                )));
            }
        }
        for (&(a, b, j), e) in &self.bracket {
            if a >= self.generators.len() || b >= self.generators.len() {
                return Err(Error::SpecError("bracket entry references unknown generator".into()));
            }
            if j < 0 {
                return Err(Error::SpecError("bracket table indices must be >= 0".into()));
            }
            let expect = self.weight(a) + self.weight(b) - rat_int(j + 1);
            for (t, g, _) in e.iter_terms() {
                if g >= self.generators.len() {
                    return Err(Error::SpecError(
                        "bracket value references unknown generator".into(),
                    ));
                }
                let got = self.weight(g) + rat_int(t as i64);
                if got != expect {
                    return Err(Error::SpecError(format!(
                        "weight bookkeeping broken in {}_({}){}: term T^{} {} has weight {}, expected {}",
                        self.generators[a].id,
                        j,
                        self.generators[b].id,
                        t,
                        self.generators[g].id,
                        rat_to_string(&got),
                        rat_to_string(&expect),
                    )));
                }
                let want_coset = self.generators[a].coset.add(&self.generators[b].coset);
                if self.generators[g].coset != want_coset {
                    return Err(Error::SpecError(format!(
                        "degree coset broken in {}_({}){}",
                        self.generators[a].id, j, self.generators[b].id
                    )));
                }
            }
            for (i, _) in e.iter_centrals() {
                if i >= self.centrals.len() {
                    return Err(Error::SpecError(
                        "bracket value references unknown central".into(),
                    ));
                }
                if !expect.is_zero() {
                    return Err(Error::SpecError(format!(
                        "central term of weight 0 in a slot of weight {}",
                        rat_to_string(&expect)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn display_element(&self, e: &LcaElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (t, g, c) in e.iter_terms() {
            let head = if t == 0 {
                self.generators[g].id.clone()
            } else if t == 1 {
                format!("T {}", self.generators[g].id)
            } else {
                format!("T^{} {}", t, self.generators[g].id)
            };
            parts.push(render_scaled(&head, c));
        }
        for (i, c) in e.iter_centrals() {
            parts.push(render_scaled(&self.centrals[i].id, c));
        }
        parts.join(" + ")
    }
}

fn render_scaled(head: &str, c: &PolyScalar) -> String {
    if c.is_one() {
        head.to_string()
    } else if c.num_terms() == 1 {
        format!("{c} {head}")
    } else {
        format!("({c}) {head}")
    }
}

/// A polynomial in lambda with LcaElement coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LambdaPoly {
    coeffs: Vec<LcaElement>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn coeff(&self, pow: usize) -> LcaElement {
        self.coeffs.get(pow).cloned().unwrap_or_default()
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len()
    }

    fn add_at(&mut self, pow: usize, e: &LcaElement) {
        if e.is_zero() {
            return;
        }
        if self.coeffs.len() <= pow {
            self.coeffs.resize(pow + 1, LcaElement::zero());
        }
        self.coeffs[pow] = self.coeffs[pow].add(e);
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|e| e.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (p, e) in other.coeffs.iter().enumerate() {
            out.add_at(p, e);
        }
        out.trim();
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> LambdaPoly {
        LambdaPoly { coeffs: self.coeffs.iter().map(|e| e.scale_rat(r)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|e| e.is_zero())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaPoly[{} coeffs]", self.coeffs.len())
    }
}

/// A polynomial in lambda and mu with LcaElement coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LambdaMuPoly {
    coeffs: BTreeMap<(usize, usize), LcaElement>,
}

impl LambdaMuPoly {
    fn add_at(&mut self, lp: usize, mp: usize, e: &LcaElement) {
        if e.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((lp, mp)).or_insert_with(LcaElement::zero);
        *slot = slot.add(e);
        if slot.is_zero() {
            self.coeffs.remove(&(lp, mp));
        }
    }

    pub fn add(&self, other: &LambdaMuPoly) -> LambdaMuPoly {
        let mut out = self.clone();
        for (&(l, m), e) in &other.coeffs {
            out.add_at(l, m, e);
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> LambdaMuPoly {
        let mut out = LambdaMuPoly::default();
        for (&(l, m), e) in &self.coeffs {
            out.add_at(l, m, &e.scale_rat(r));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn nonzero_coeffs(&self) -> impl Iterator<Item = (usize, usize, &LcaElement)> {
        self.coeffs.iter().map(|(&(l, m), e)| (l, m, e))
    }
}

/// [a_lambda b] extended from the generator table by sesquilinearity:
/// [(Ta)_l b] = -l [a_l b] and [a_l (Tb)] = (T + l)[a_l b].
pub fn lambda_bracket(spec: &LcaSpec, a: &LcaElement, b: &LcaElement) -> LambdaPoly {
    let mut out = LambdaPoly::zero();
    for (s, ga, ca) in a.iter_terms() {
        for (t, gb, cb) in b.iter_terms() {
            let coeff = ca * cb;
            let base = generator_bracket(spec, ga, gb);
            // (-lambda)^s shifts powers up by s with sign (-1)^s
            let sign = if s % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            // (T + lambda)^t = sum_i binom(t, i) lambda^i T^(t-i)
            for (pow, elem) in base.coeffs.iter().enumerate() {
                for i in 0..=t {
                    let bin = binom_int(t as i64, i as i64);
                    if bin.is_zero() {
                        continue;
                    }
                    let applied = elem.apply_t(t - i).scale(&coeff).scale_rat(&(&sign * bin));
                    out.add_at(pow + s as usize + i as usize, &applied);
                }
            }
        }
        // [a_l C] = 0 for central C: b's central part contributes nothing
    }
    out.trim();
    out
}

/// [g_lambda h] for single generators, straight from the table:
/// sum_j lambda^j / j! (g_(j) h).
fn generator_bracket(spec: &LcaSpec, ga: usize, gb: usize) -> LambdaPoly {
    let mut out = LambdaPoly::zero();
    let top = spec.bracket_top(ga, gb);
    let mut fact = rat_int(1);
    for j in 0..=top {
        if j > 0 {
            fact *= rat_int(j);
        }
        let e = spec.bracket_entry(ga, gb, j);
        if !e.is_zero() {
            out.add_at(j as usize, &e.scale_rat(&(rat_int(1) / &fact)));
        }
    }
    out.trim();
    out
}

/// [a_{-T-lambda} b]: substitute mu = -T - lambda into [a_mu b], with T
/// acting on the coefficients from the left.
fn bracket_minus_t_lambda(spec: &LcaSpec, a: &LcaElement, b: &LcaElement) -> LambdaPoly {
    let base = lambda_bracket(spec, a, b);
    let mut out = LambdaPoly::zero();
    for (j, elem) in base.coeffs.iter().enumerate() {
        // (-1)^j (T + lambda)^j elem = (-1)^j sum_i binom(j,i) lambda^i T^(j-i) elem
        let sign = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        for i in 0..=j {
            let bin = binom_int(j as i64, i as i64);
            let applied = elem.apply_t((j - i) as u32).scale_rat(&(&sign * bin));
            out.add_at(i, &applied);
        }
    }
    out.trim();
    out
}

#[derive(Clone, Debug)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub tuple: Vec<String>,
    pub defect: String,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
    pub checked: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify skew-commutativity and the Jacobi identity for all generator
/// pairs/triples, exactly. Sesquilinearity holds by construction (the
/// table stores only generator pairs); the table's weight and coset
/// bookkeeping is validated at construction.
pub fn check_axioms(spec: &LcaSpec) -> AxiomReport {
    let mut report = AxiomReport::default();
    let n = spec.gen_count();
    // skew-commutativity: [b_l a] = -p(a,b) [a_{-T-l} b]
    for a in 0..n {
        for b in 0..n {
            report.checked += 1;
            let lhs = lambda_bracket(spec, &LcaElement::generator(b), &LcaElement::generator(a));
            let rhs = bracket_minus_t_lambda(
                spec,
                &LcaElement::generator(a),
                &LcaElement::generator(b),
            )
            .scale_rat(&rat_int(-spec.parity_sign(a, b)));
            let defect = lhs.add(&rhs.scale_rat(&rat_int(-1)));
            if !defect.is_zero() {
                report.violations.push(AxiomViolation {
                    axiom: "skew-commutativity",
                    tuple: vec![spec.generators[a].id.clone(), spec.generators[b].id.clone()],
                    defect: render_lambda_defect(spec, &defect),
                });
            }
        }
    }
    // Jacobi: [a_l [b_m c]] = [[a_l b]_{l+m} c] + p(a,b) [b_m [a_l c]]
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                report.checked += 1;
                let lhs = nested_left(spec, a, b, c);
                let first = bracket_of_bracket(spec, a, b, c);
                let second =
                    nested_right(spec, a, b, c).scale_rat(&rat_int(spec.parity_sign(a, b)));
                let rhs = first.add(&second);
                let defect = lhs.add(&rhs.scale_rat(&rat_int(-1)));
                if !defect.is_zero() {
                    report.violations.push(AxiomViolation {
                        axiom: "jacobi",
                        tuple: vec![
                            spec.generators[a].id.clone(),
                            spec.generators[b].id.clone(),
                            spec.generators[c].id.clone(),
                        ],
                        defect: render_lambda_mu_defect(spec, &defect),
                    });
                }
            }
        }
    }
    report
}

/// [a_lambda [b_mu c]] as a polynomial in (lambda, mu).
fn nested_left(spec: &LcaSpec, a: usize, b: usize, c: usize) -> LambdaMuPoly {
    let inner = lambda_bracket(spec, &LcaElement::generator(b), &LcaElement::generator(c));
    let mut out = LambdaMuPoly::default();
    for (mpow, v) in inner.coeffs.iter().enumerate() {
        let outer = lambda_bracket(spec, &LcaElement::generator(a), v);
        for (lpow, w) in outer.coeffs.iter().enumerate() {
            out.add_at(lpow, mpow, w);
        }
    }
    out
}

/// [b_mu [a_lambda c]] as a polynomial in (lambda, mu).
fn nested_right(spec: &LcaSpec, a: usize, b: usize, c: usize) -> LambdaMuPoly {
    let inner = lambda_bracket(spec, &LcaElement::generator(a), &LcaElement::generator(c));
    let mut out = LambdaMuPoly::default();
    for (lpow, v) in inner.coeffs.iter().enumerate() {
        let outer = lambda_bracket(spec, &LcaElement::generator(b), v);
        for (mpow, w) in outer.coeffs.iter().enumerate() {
            out.add_at(lpow, mpow, w);
        }
    }
    out
}

/// [[a_lambda b]_{lambda+mu} c] as a polynomial in (lambda, mu).
fn bracket_of_bracket(spec: &LcaSpec, a: usize, b: usize, c: usize) -> LambdaMuPoly {
    let inner = lambda_bracket(spec, &LcaElement::generator(a), &LcaElement::generator(b));
    let mut out = LambdaMuPoly::default();
    for (lpow, u) in inner.coeffs.iter().enumerate() {
        let outer = lambda_bracket(spec, u, &LcaElement::generator(c));
        for (nupow, s) in outer.coeffs.iter().enumerate() {
            // (lambda+mu)^nupow
            for i in 0..=nupow {
                let bin = binom_int(nupow as i64, i as i64);
                out.add_at(lpow + i, nupow - i, &s.scale_rat(&bin));
            }
        }
    }
    out
}

fn render_lambda_defect(spec: &LcaSpec, p: &LambdaPoly) -> String {
    let mut parts = Vec::new();
    for (pow, e) in p.coeffs.iter().enumerate() {
        if !e.is_zero() {
            parts.push(format!("lambda^{pow}: {}", spec.display_element(e)));
        }
    }
    parts.join("; ")
}

fn render_lambda_mu_defect(spec: &LcaSpec, p: &LambdaMuPoly) -> String {
    p.nonzero_coeffs()
        .map(|(l, m, e)| format!("lambda^{l} mu^{m}: {}", spec.display_element(e)))
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests;
