use std::ops::{Add, Neg, Sub};

use num_traits::Float;

use super::field::{Constants, Exponents, Monomial, ScalarField};
use super::{Coefficient, FormError};

/// `A dp + B dV`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm<C> {
    /// Coefficient of `dp`.
    pub dp: ScalarField<C>,
    /// Coefficient of `dV`.
    pub dv: ScalarField<C>,
}

impl<C: Coefficient> OneForm<C> {
    pub fn new(dp: ScalarField<C>, dv: ScalarField<C>) -> Self {
        OneForm { dp, dv }
    }

    pub fn zero() -> Self {
        OneForm::new(ScalarField::zero(), ScalarField::zero())
    }

    /// `(1/p) dp`.
    pub fn dlog_p() -> Self {
        OneForm::new(Monomial::p(-1).into(), ScalarField::zero())
    }

    /// `(1/V) dV`.
    pub fn dlog_v() -> Self {
        OneForm::new(ScalarField::zero(), Monomial::v(-1).into())
    }

    /// Work form `p dV`.
    pub fn work() -> Self {
        OneForm::new(ScalarField::zero(), Monomial::p(1).into())
    }

    pub fn is_zero(&self) -> bool {
        self.dp.is_zero() && self.dv.is_zero()
    }

    pub fn scale(&self, factor: &C) -> Self {
        OneForm::new(self.dp.scale(factor), self.dv.scale(factor))
    }

    /// Multiplication by a 0-form.
    pub fn scale_by(&self, factor: &ScalarField<C>) -> Self {
        OneForm::new(&self.dp * factor, &self.dv * factor)
    }

    /// First nonzero coefficient in canonical order, `dp` side before `dV`.
    pub fn leading_coefficient(&self) -> Option<&C> {
        self.dp.leading().or_else(|| self.dv.leading()).map(|(_, c)| c)
    }

    /// Representative of the ray `{λ f : λ ≠ 0}` with leading coefficient one.
    pub fn normalized(&self) -> Self {
        match self.leading_coefficient() {
            Some(lead) => {
                let inv = C::one() / lead.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// `(A(p, V), B(p, V))` with numeric constants.
    pub fn evaluate<T: Float>(&self, p: T, v: T, constants: &Constants<T>) -> (T, T) {
        (
            self.dp.evaluate(p, v, constants),
            self.dv.evaluate(p, v, constants),
        )
    }

    pub fn substitute_constants<T>(&self, constants: &Constants<T>) -> OneForm<T>
    where
        T: Float + Coefficient,
    {
        OneForm::new(
            self.dp.substitute_constants(constants),
            self.dv.substitute_constants(constants),
        )
    }
}

impl<C: Coefficient> Add for OneForm<C> {
    type Output = OneForm<C>;

    fn add(self, rhs: OneForm<C>) -> OneForm<C> {
        OneForm::new(self.dp + rhs.dp, self.dv + rhs.dv)
    }
}

impl<C: Coefficient> Sub for OneForm<C> {
    type Output = OneForm<C>;

    fn sub(self, rhs: OneForm<C>) -> OneForm<C> {
        OneForm::new(self.dp - rhs.dp, self.dv - rhs.dv)
    }
}

impl<C: Coefficient> Neg for OneForm<C> {
    type Output = OneForm<C>;

    fn neg(self) -> OneForm<C> {
        OneForm::new(-self.dp, -self.dv)
    }
}

/// `C dp∧dV`, the only independent component on a 2-manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm<C> {
    pub dp_dv: ScalarField<C>,
}

impl<C: Coefficient> TwoForm<C> {
    pub fn new(dp_dv: ScalarField<C>) -> Self {
        TwoForm { dp_dv }
    }

    pub fn is_zero(&self) -> bool {
        self.dp_dv.is_zero()
    }
}

impl<C: Coefficient> Add for TwoForm<C> {
    type Output = TwoForm<C>;

    fn add(self, rhs: TwoForm<C>) -> TwoForm<C> {
        TwoForm::new(self.dp_dv + rhs.dp_dv)
    }
}

/// A 0-form `poly + a·ln p + b·ln V`, where `a` and `b` involve only `nR`,
/// `c_v` and rational factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential<C> {
    poly: ScalarField<C>,
    log_p: ScalarField<C>,
    log_v: ScalarField<C>,
}

impl<C: Coefficient> Potential<C> {
    pub fn new(
        poly: ScalarField<C>,
        log_p: ScalarField<C>,
        log_v: ScalarField<C>,
    ) -> Result<Self, FormError> {
        for log in [&log_p, &log_v] {
            if log.depends_on_state() {
                return Err(FormError::StateDependentLog(log.to_string()));
            }
        }
        Ok(Potential { poly, log_p, log_v })
    }

    pub fn zero() -> Self {
        Potential::from(ScalarField::zero())
    }

    pub fn poly(&self) -> &ScalarField<C> {
        &self.poly
    }

    /// Coefficient of `ln p`.
    pub fn log_p(&self) -> &ScalarField<C> {
        &self.log_p
    }

    /// Coefficient of `ln V`.
    pub fn log_v(&self) -> &ScalarField<C> {
        &self.log_v
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() && self.log_p.is_zero() && self.log_v.is_zero()
    }

    /// Product with a state-independent factor.
    pub fn scaled(&self, factor: &ScalarField<C>) -> Result<Self, FormError> {
        if factor.depends_on_state() {
            return Err(FormError::StateDependentLog(factor.to_string()));
        }
        Ok(Potential {
            poly: &self.poly * factor,
            log_p: &self.log_p * factor,
            log_v: &self.log_v * factor,
        })
    }

    pub fn evaluate<T: Float>(&self, p: T, v: T, constants: &Constants<T>) -> T {
        self.poly.evaluate(p, v, constants)
            + self.log_p.evaluate(p, v, constants) * p.ln()
            + self.log_v.evaluate(p, v, constants) * v.ln()
    }

    pub fn substitute_constants<T>(&self, constants: &Constants<T>) -> Potential<T>
    where
        T: Float + Coefficient,
    {
        Potential {
            poly: self.poly.substitute_constants(constants),
            log_p: self.log_p.substitute_constants(constants),
            log_v: self.log_v.substitute_constants(constants),
        }
    }
}

impl<C: Coefficient> From<ScalarField<C>> for Potential<C> {
    fn from(poly: ScalarField<C>) -> Self {
        Potential {
            poly,
            log_p: ScalarField::zero(),
            log_v: ScalarField::zero(),
        }
    }
}

impl<C: Coefficient> Add for Potential<C> {
    type Output = Potential<C>;

    fn add(self, rhs: Potential<C>) -> Potential<C> {
        Potential {
            poly: self.poly + rhs.poly,
            log_p: self.log_p + rhs.log_p,
            log_v: self.log_v + rhs.log_v,
        }
    }
}

/// Anything with an exterior derivative into 1-forms.
pub trait ZeroForm<C: Coefficient> {
    fn differential(&self) -> OneForm<C>;
}

impl<C: Coefficient> ZeroForm<C> for ScalarField<C> {
    fn differential(&self) -> OneForm<C> {
        OneForm::new(self.partial_p(), self.partial_v())
    }
}

impl<C: Coefficient> ZeroForm<C> for Potential<C> {
    fn differential(&self) -> OneForm<C> {
        let logs = OneForm::new(
            &self.log_p * &Monomial::p(-1).into(),
            &self.log_v * &Monomial::v(-1).into(),
        );
        self.poly.differential() + logs
    }
}

/// `dg = (∂g/∂p) dp + (∂g/∂V) dV`.
pub fn d_scalar<C: Coefficient, G: ZeroForm<C>>(g: &G) -> OneForm<C> {
    g.differential()
}

/// `d(A dp + B dV) = (∂B/∂p − ∂A/∂V) dp∧dV`.
pub fn d_one<C: Coefficient>(f: &OneForm<C>) -> TwoForm<C> {
    TwoForm::new(f.dv.partial_p() - f.dp.partial_v())
}

pub fn is_closed<C: Coefficient>(f: &OneForm<C>) -> bool {
    d_one(f).is_zero()
}

/// Reconstructs `g` with `dg = f` exactly.
///
/// `A` is integrated in `p`, the remainder `B − ∂g/∂V` (free of `p` for a
/// closed form) in `V`. Exponent `−1` produces the logarithm terms.
pub fn find_potential<C: Coefficient>(f: &OneForm<C>) -> Result<Potential<C>, FormError> {
    if !is_closed(f) {
        return Err(FormError::NotClosed);
    }
    let mut poly = Vec::new();
    let mut log_p = Vec::new();
    for m in f.dp.monomials() {
        let e = m.exponents;
        if e.p_pow == -1 {
            if e.v_pow != 0 {
                return Err(FormError::NotIntegrable(format!(
                    "term {m} of the dp coefficient integrates to V-dependent ln p"
                )));
            }
            log_p.push(Monomial::new(m.coeff, Exponents { p_pow: 0, ..e }));
        } else {
            let k = C::from_int(e.p_pow as i64 + 1);
            poly.push(Monomial::new(m.coeff / k, Exponents { p_pow: e.p_pow + 1, ..e }));
        }
    }
    let partial = ScalarField::from_monomials(poly.iter().cloned());
    let remainder = f.dv.clone() - partial.partial_v();
    let mut log_v = Vec::new();
    for m in remainder.monomials() {
        let e = m.exponents;
        if e.p_pow != 0 {
            return Err(FormError::NotIntegrable(format!(
                "dV remainder term {m} depends on p"
            )));
        }
        if e.v_pow == -1 {
            log_v.push(Monomial::new(m.coeff, Exponents { v_pow: 0, ..e }));
        } else {
            let k = C::from_int(e.v_pow as i64 + 1);
            poly.push(Monomial::new(m.coeff / k, Exponents { v_pow: e.v_pow + 1, ..e }));
        }
    }
    let g = Potential::new(
        ScalarField::from_monomials(poly),
        ScalarField::from_monomials(log_p),
        ScalarField::from_monomials(log_v),
    )?;
    if g.differential() != *f {
        return Err(FormError::NotIntegrable(format!(
            "reconstruction of {f} does not re-differentiate"
        )));
    }
    Ok(g)
}
