use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, NumCast};

use super::Coefficient;

/// Exponents of `p`, `V`, `nR` and `c_v` in a monomial.
///
/// The derived ordering is lexicographic on `(p, V, nR, c_v)` and defines the
/// canonical term order of a [`ScalarField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponents {
    pub p_pow: i32,
    pub v_pow: i32,
    pub nr_pow: i32,
    pub cv_pow: i32,
}

impl Exponents {
    pub const ZERO: Exponents = Exponents::new(0, 0, 0, 0);

    pub const fn new(p_pow: i32, v_pow: i32, nr_pow: i32, cv_pow: i32) -> Self {
        Exponents {
            p_pow,
            v_pow,
            nr_pow,
            cv_pow,
        }
    }

    pub fn depends_on_state(&self) -> bool {
        self.p_pow != 0 || self.v_pow != 0
    }
}

impl Mul for Exponents {
    type Output = Exponents;

    fn mul(self, rhs: Exponents) -> Exponents {
        Exponents::new(
            self.p_pow + rhs.p_pow,
            self.v_pow + rhs.v_pow,
            self.nr_pow + rhs.nr_pow,
            self.cv_pow + rhs.cv_pow,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Monomial<C> {
    pub coeff: C,
    pub exponents: Exponents,
}

impl<C: Coefficient> Monomial<C> {
    pub fn new(coeff: C, exponents: Exponents) -> Self {
        Monomial { coeff, exponents }
    }

    pub fn p(k: i32) -> Self {
        Monomial::new(C::one(), Exponents::new(k, 0, 0, 0))
    }

    pub fn v(k: i32) -> Self {
        Monomial::new(C::one(), Exponents::new(0, k, 0, 0))
    }
}

impl<C: Coefficient> Mul for Monomial<C> {
    type Output = Monomial<C>;

    fn mul(self, rhs: Monomial<C>) -> Monomial<C> {
        Monomial::new(self.coeff * rhs.coeff, self.exponents * rhs.exponents)
    }
}

/// Numeric values substituted for the symbolic constants `nR` and `c_v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants<T> {
    pub nr: T,
    pub cv: T,
}

/// Finite sum of monomials in canonical form: like terms merged, zero terms
/// dropped, terms ordered by [`Exponents`]. Structural equality is therefore
/// equality of functions.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField<C> {
    terms: BTreeMap<Exponents, C>,
}

impl<C: Coefficient> Default for ScalarField<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> ScalarField<C> {
    pub fn zero() -> Self {
        ScalarField {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_monomials([Monomial::new(c, Exponents::ZERO)])
    }

    pub fn monomial(coeff: C, exponents: Exponents) -> Self {
        Self::from_monomials([Monomial::new(coeff, exponents)])
    }

    /// `nR` as a field.
    pub fn nr() -> Self {
        Self::monomial(C::one(), Exponents::new(0, 0, 1, 0))
    }

    /// `c_v` as a field.
    pub fn cv() -> Self {
        Self::monomial(C::one(), Exponents::new(0, 0, 0, 1))
    }

    /// Builds the canonical form of an arbitrary list of monomials.
    pub fn from_monomials<I>(monomials: I) -> Self
    where
        I: IntoIterator<Item = Monomial<C>>,
    {
        let mut field = Self::zero();
        for m in monomials {
            field.add_term(m.exponents, m.coeff);
        }
        field
    }

    fn add_term(&mut self, exponents: Exponents, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Exponents::ZERO).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> + '_ {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial<C>> + '_ {
        self.terms.iter().map(|(e, c)| Monomial::new(c.clone(), *e))
    }

    pub fn coefficient(&self, exponents: &Exponents) -> Option<&C> {
        self.terms.get(exponents)
    }

    /// First term in canonical order.
    pub fn leading(&self) -> Option<(&Exponents, &C)> {
        self.terms.iter().next()
    }

    /// True if some term carries a power of `p` or `V`.
    pub fn depends_on_state(&self) -> bool {
        self.terms.keys().any(Exponents::depends_on_state)
    }

    pub fn scale(&self, factor: &C) -> Self {
        Self::from_monomials(
            self.terms
                .iter()
                .map(|(e, c)| Monomial::new(c.clone() * factor.clone(), *e)),
        )
    }

    /// Termwise `∂/∂p`.
    pub fn partial_p(&self) -> Self {
        Self::from_monomials(self.terms.iter().filter(|(e, _)| e.p_pow != 0).map(|(e, c)| {
            let mut e = *e;
            let k = C::from_int(e.p_pow as i64);
            e.p_pow -= 1;
            Monomial::new(c.clone() * k, e)
        }))
    }

    /// Termwise `∂/∂V`.
    pub fn partial_v(&self) -> Self {
        Self::from_monomials(self.terms.iter().filter(|(e, _)| e.v_pow != 0).map(|(e, c)| {
            let mut e = *e;
            let k = C::from_int(e.v_pow as i64);
            e.v_pow -= 1;
            Monomial::new(c.clone() * k, e)
        }))
    }

    pub fn evaluate<T: Float>(&self, p: T, v: T, constants: &Constants<T>) -> T {
        self.terms.iter().fold(T::zero(), |acc, (e, c)| {
            acc + to_float::<C, T>(c)
                * p.powi(e.p_pow)
                * v.powi(e.v_pow)
                * constants.nr.powi(e.nr_pow)
                * constants.cv.powi(e.cv_pow)
        })
    }

    /// Replaces `nR` and `c_v` by numbers, leaving a field in `p` and `V` only.
    pub fn substitute_constants<T>(&self, constants: &Constants<T>) -> ScalarField<T>
    where
        T: Float + Coefficient,
    {
        ScalarField::from_monomials(self.terms.iter().map(|(e, c)| {
            let coeff = to_float::<C, T>(c) * constants.nr.powi(e.nr_pow) * constants.cv.powi(e.cv_pow);
            Monomial::new(coeff, Exponents::new(e.p_pow, e.v_pow, 0, 0))
        }))
    }
}

pub(crate) fn to_float<C: Coefficient, T: Float>(c: &C) -> T {
    <T as NumCast>::from(c.clone()).expect("coefficient converts to a float")
}

impl<C: Coefficient> From<Monomial<C>> for ScalarField<C> {
    fn from(m: Monomial<C>) -> Self {
        Self::from_monomials([m])
    }
}

impl<C: Coefficient> Add for ScalarField<C> {
    type Output = ScalarField<C>;

    fn add(mut self, rhs: ScalarField<C>) -> ScalarField<C> {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<C: Coefficient> Neg for ScalarField<C> {
    type Output = ScalarField<C>;

    fn neg(self) -> ScalarField<C> {
        ScalarField {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Coefficient> Sub for ScalarField<C> {
    type Output = ScalarField<C>;

    fn sub(self, rhs: ScalarField<C>) -> ScalarField<C> {
        self + (-rhs)
    }
}

impl<C: Coefficient> Mul for &ScalarField<C> {
    type Output = ScalarField<C>;

    fn mul(self, rhs: &ScalarField<C>) -> ScalarField<C> {
        let mut out = ScalarField::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(*ea * *eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Mul for ScalarField<C> {
    type Output = ScalarField<C>;

    fn mul(self, rhs: ScalarField<C>) -> ScalarField<C> {
        &self * &rhs
    }
}
