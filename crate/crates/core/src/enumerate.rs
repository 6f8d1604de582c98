//! Candidate generation.
//!
//! Two enumerations live here. [`enumerate_closed_forms`] searches the monomial
//! ansatz `p^α V^β dp + p^α' V^β' dV` for closed, unit-consistent 1-forms.
//! [`theorem_candidates`] assembles linear theorems `c₀ + Σ cᵢ Aᵢ = 0` from a
//! set of singleton terms under an additive complexity budget.

use std::collections::BTreeMap;
use std::fmt;

use crate::forms::{find_potential, is_closed, Coefficient, Exponents, OneForm, Potential, ScalarField};
use crate::units::{exponent_unit_filter, summands_consistent, SymbolTable};

/// Exponents `(α, β, α', β')` of `p^α V^β dp + p^α' V^β' dV`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentTuple {
    pub alpha: i32,
    pub beta: i32,
    pub alpha_p: i32,
    pub beta_p: i32,
}

impl ExponentTuple {
    /// The tuple of `(1/p) dp + (1/V) dV`.
    pub const LOG_ANSATZ: ExponentTuple = ExponentTuple::new(-1, 0, 0, -1);

    pub const fn new(alpha: i32, beta: i32, alpha_p: i32, beta_p: i32) -> Self {
        ExponentTuple {
            alpha,
            beta,
            alpha_p,
            beta_p,
        }
    }

    /// All tuples with every component in `[-bound, bound]`, in lexicographic order.
    pub fn window(bound: u32) -> impl Iterator<Item = ExponentTuple> {
        let b = bound as i32;
        (-b..=b).flat_map(move |alpha| {
            (-b..=b).flat_map(move |beta| {
                (-b..=b).flat_map(move |alpha_p| {
                    (-b..=b).map(move |beta_p| ExponentTuple::new(alpha, beta, alpha_p, beta_p))
                })
            })
        })
    }

    pub fn dp_exponents(&self) -> Exponents {
        Exponents::new(self.alpha, self.beta, 0, 0)
    }

    pub fn dv_exponents(&self) -> Exponents {
        Exponents::new(self.alpha_p, self.beta_p, 0, 0)
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.alpha, self.beta, self.alpha_p, self.beta_p)
    }
}

/// How the two monomials of a tuple were weighted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// `α' p^α V^β dp + β p^α' V^β' dV`, the weighting that makes the mixed
    /// partials agree whenever the exponents match.
    Coupled,
    /// `p^α V^β dp` alone.
    DpOnly,
    /// `p^α' V^β' dV` alone.
    DvOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Tuple { tuple: ExponentTuple, pattern: Pattern },
    Composite(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Tuple { tuple, pattern } => write!(f, "{tuple} {pattern:?}"),
            Provenance::Composite(s) => f.write_str(s),
        }
    }
}

/// A closed, unit-consistent 1-form with its reconstructed potential.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateForm<C> {
    pub form: OneForm<C>,
    pub provenance: Provenance,
    pub potential: Potential<C>,
    /// Sum of `|p exponent| + |V exponent|` over all terms.
    pub complexity: u32,
    /// Set for closed families other than `c₁ (1/p) dp + c₂ (1/V) dV`.
    pub outside_log_ansatz: bool,
}

/// The weighted forms a tuple contributes before any filtering.
pub fn tuple_patterns<C: Coefficient>(t: ExponentTuple) -> Vec<(Pattern, OneForm<C>)> {
    let dp = ScalarField::monomial(C::one(), t.dp_exponents());
    let dv = ScalarField::monomial(C::one(), t.dv_exponents());
    let coupled = OneForm::new(
        dp.scale(&C::from_int(t.alpha_p as i64)),
        dv.scale(&C::from_int(t.beta as i64)),
    );
    if coupled.is_zero() {
        vec![
            (Pattern::DpOnly, OneForm::new(dp, ScalarField::zero())),
            (Pattern::DvOnly, OneForm::new(ScalarField::zero(), dv)),
        ]
    } else {
        vec![(Pattern::Coupled, coupled)]
    }
}

fn form_complexity<C: Coefficient>(f: &OneForm<C>) -> u32 {
    f.dp
        .terms()
        .chain(f.dv.terms())
        .map(|(e, _)| e.p_pow.unsigned_abs() + e.v_pow.unsigned_abs())
        .sum()
}

/// Closed, unit-consistent monomial 1-forms with exponents in `[-bound, bound]`.
///
/// Results are unique up to a nonzero scalar and sorted by complexity, then by
/// rendered text. `(1/p) dp` and `(1/V) dV` come out as separate elements.
pub fn enumerate_closed_forms<C: Coefficient>(bound: u32, syms: &SymbolTable) -> Vec<CandidateForm<C>> {
    let mut unique: BTreeMap<String, CandidateForm<C>> = BTreeMap::new();
    for tuple in ExponentTuple::window(bound).filter(|t| exponent_unit_filter(*t)) {
        for (pattern, form) in tuple_patterns::<C>(tuple) {
            if form.is_zero() || !is_closed(&form) || !summands_consistent(&form, syms) {
                continue;
            }
            let key = form.normalized().to_string();
            if unique.contains_key(&key) {
                continue;
            }
            let potential = find_potential(&form).expect("closed monomial forms are exact");
            unique.insert(
                key,
                CandidateForm {
                    complexity: form_complexity(&form),
                    outside_log_ansatz: tuple != ExponentTuple::LOG_ANSATZ,
                    provenance: Provenance::Tuple { tuple, pattern },
                    potential,
                    form,
                },
            );
        }
    }
    let mut out: Vec<_> = unique.into_values().collect();
    out.sort_by_cached_key(|c| (c.complexity, c.form.to_string()));
    out
}

/// Quantities whose differentials are observed directly in experiment records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    Entropy,
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observable::Entropy => f.write_str("dS"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Term<C> {
    Observed(Observable),
    Form(OneForm<C>),
}

/// One hypothesis term `Aᵢ` of `c₀ + c₁ Aᵢ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingletonTheorem<C> {
    pub label: String,
    pub term: Term<C>,
    pub complexity: u32,
}

impl<C: Coefficient> SingletonTheorem<C> {
    pub fn observed(observable: Observable) -> Self {
        SingletonTheorem {
            label: observable.to_string(),
            term: Term::Observed(observable),
            complexity: 1,
        }
    }

    pub fn form(form: OneForm<C>) -> Self {
        SingletonTheorem {
            label: form.to_string(),
            term: Term::Form(form),
            complexity: 1,
        }
    }

    pub fn with_complexity(mut self, complexity: u32) -> Self {
        assert!(complexity >= 1, "complexity scores start at 1");
        self.complexity = complexity;
        self
    }
}

/// A subset of a singleton set, by index, in increasing index order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TheoremCandidate {
    pub members: Vec<usize>,
    pub total_complexity: u32,
}

impl TheoremCandidate {
    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(&index)
    }

    /// `c0 + c1 A + c2 B + ... = 0` with the singleton labels.
    pub fn render<C>(&self, set: &[SingletonTheorem<C>]) -> String {
        let mut out = String::from("c0");
        for (k, &i) in self.members.iter().enumerate() {
            let label = &set[i].label;
            match set[i].term {
                Term::Observed(_) => out.push_str(&format!(" + c{} {label}", k + 1)),
                Term::Form(_) => out.push_str(&format!(" + c{} ({label})", k + 1)),
            }
        }
        out.push_str(" = 0");
        out
    }
}

/// Every nonempty subset of `set` whose complexities sum to at most `budget`,
/// ordered by total complexity and then lexicographically by member indices.
pub fn theorem_candidates<C>(set: &[SingletonTheorem<C>], budget: u32) -> Vec<TheoremCandidate> {
    fn extend<C>(
        set: &[SingletonTheorem<C>],
        budget: u32,
        start: usize,
        members: &mut Vec<usize>,
        total: u32,
        out: &mut Vec<TheoremCandidate>,
    ) {
        for i in start..set.len() {
            let next = total + set[i].complexity;
            if next > budget {
                continue;
            }
            members.push(i);
            out.push(TheoremCandidate {
                members: members.clone(),
                total_complexity: next,
            });
            extend(set, budget, i + 1, members, next, out);
            members.pop();
        }
    }

    let mut out = Vec::new();
    extend(set, budget, 0, &mut Vec::new(), 0, &mut out);
    out.sort_by(|a, b| {
        a.total_complexity
            .cmp(&b.total_complexity)
            .then_with(|| a.members.cmp(&b.members))
    });
    out
}

/// `{dS, (1/p) dp, (1/V) dV}`, each of complexity one.
pub fn entropy_theorem_set<C: Coefficient>() -> Vec<SingletonTheorem<C>> {
    vec![
        SingletonTheorem::observed(Observable::Entropy),
        SingletonTheorem::form(OneForm::dlog_p()),
        SingletonTheorem::form(OneForm::dlog_v()),
    ]
}

/// `dS` followed by every enumerated candidate form.
pub fn singletons_from_candidates<C: Coefficient>(candidates: &[CandidateForm<C>]) -> Vec<SingletonTheorem<C>> {
    std::iter::once(SingletonTheorem::observed(Observable::Entropy))
        .chain(candidates.iter().map(|c| SingletonTheorem::form(c.form.clone())))
        .collect()
}
