//! Physical dimensions as integer exponent vectors over the SI base units
//! (mass, length, time, temperature, amount), plus the unit-consistency checks
//! used to prune candidate forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use thiserror::Error;

use crate::enumerate::ExponentTuple;
use crate::forms::{Coefficient, Monomial, OneForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitError {
    #[error("symbol `{0}` has no dimension in the symbol table")]
    UnknownSymbol(Symbol),
}

/// Exponents of the SI base dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Dimension {
    pub mass: i32,
    pub length: i32,
    pub time: i32,
    pub temperature: i32,
    pub amount: i32,
}

impl Dimension {
    pub const DIMENSIONLESS: Dimension = Dimension::new(0, 0, 0, 0, 0);
    /// Pa = kg m⁻¹ s⁻².
    pub const PRESSURE: Dimension = Dimension::new(1, -1, -2, 0, 0);
    pub const VOLUME: Dimension = Dimension::new(0, 3, 0, 0, 0);
    pub const ENERGY: Dimension = Dimension::new(1, 2, -2, 0, 0);
    pub const TEMPERATURE: Dimension = Dimension::new(0, 0, 0, 1, 0);
    /// J/K, shared by nR, c_v and S for a fixed sample.
    pub const HEAT_CAPACITY: Dimension = Dimension::new(1, 2, -2, -1, 0);

    pub const fn new(mass: i32, length: i32, time: i32, temperature: i32, amount: i32) -> Self {
        Dimension {
            mass,
            length,
            time,
            temperature,
            amount,
        }
    }

    pub fn is_dimensionless(&self) -> bool {
        *self == Self::DIMENSIONLESS
    }

    /// Componentwise `k · d`.
    pub fn powi(self, k: i32) -> Self {
        Dimension::new(
            self.mass * k,
            self.length * k,
            self.time * k,
            self.temperature * k,
            self.amount * k,
        )
    }

    pub fn recip(self) -> Self {
        self.powi(-1)
    }
}

impl Mul for Dimension {
    type Output = Dimension;

    fn mul(self, rhs: Dimension) -> Dimension {
        Dimension::new(
            self.mass + rhs.mass,
            self.length + rhs.length,
            self.time + rhs.time,
            self.temperature + rhs.temperature,
            self.amount + rhs.amount,
        )
    }
}

impl Div for Dimension {
    type Output = Dimension;

    fn div(self, rhs: Dimension) -> Dimension {
        self * rhs.recip()
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            return f.write_str("1");
        }
        let parts = [
            ("M", self.mass),
            ("L", self.length),
            ("T", self.time),
            ("Θ", self.temperature),
            ("N", self.amount),
        ];
        let mut first = true;
        for (name, exp) in parts {
            if exp == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if exp == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// `dim_mul(a, b)`: product of two dimensions.
pub fn dim_mul(a: Dimension, b: Dimension) -> Dimension {
    a * b
}

/// `dim_pow(d, k)`: `d` raised to an integer power.
pub fn dim_pow(d: Dimension, k: i32) -> Dimension {
    d.powi(k)
}

/// Named quantities that can carry a dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    P,
    V,
    NR,
    Cv,
    S,
    T,
    E,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::P => "p",
            Symbol::V => "V",
            Symbol::NR => "nR",
            Symbol::Cv => "c_v",
            Symbol::S => "S",
            Symbol::T => "T",
            Symbol::E => "E",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    dims: BTreeMap<Symbol, Dimension>,
}

impl SymbolTable {
    pub fn empty() -> Self {
        SymbolTable {
            dims: BTreeMap::new(),
        }
    }

    /// Dimensions of a fixed ideal-gas sample, with the mole count folded
    /// into `nR` so that `amount` never appears.
    pub fn ideal_gas() -> Self {
        let mut table = Self::empty();
        table.insert(Symbol::P, Dimension::PRESSURE);
        table.insert(Symbol::V, Dimension::VOLUME);
        table.insert(Symbol::NR, Dimension::HEAT_CAPACITY);
        table.insert(Symbol::Cv, Dimension::HEAT_CAPACITY);
        table.insert(Symbol::S, Dimension::HEAT_CAPACITY);
        table.insert(Symbol::T, Dimension::TEMPERATURE);
        table.insert(Symbol::E, Dimension::ENERGY);
        table
    }

    pub fn insert(&mut self, symbol: Symbol, dim: Dimension) -> Option<Dimension> {
        self.dims.insert(symbol, dim)
    }

    pub fn get(&self, symbol: Symbol) -> Result<Dimension, UnitError> {
        self.dims
            .get(&symbol)
            .copied()
            .ok_or(UnitError::UnknownSymbol(symbol))
    }
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::ideal_gas()
    }
}

/// Dimension of a monomial: the product of its symbols' dimensions raised to
/// their exponents. The rational coefficient is dimensionless.
pub fn monomial_dimension<C: Coefficient>(
    m: &Monomial<C>,
    syms: &SymbolTable,
) -> Result<Dimension, UnitError> {
    let e = m.exponents;
    let mut dim = Dimension::DIMENSIONLESS;
    for (symbol, k) in [
        (Symbol::P, e.p_pow),
        (Symbol::V, e.v_pow),
        (Symbol::NR, e.nr_pow),
        (Symbol::Cv, e.cv_pow),
    ] {
        if k != 0 {
            dim = dim * syms.get(symbol)?.powi(k);
        }
    }
    Ok(dim)
}

/// True iff every summand of `A dp` and `B dV` carries the same dimension.
///
/// A form with no terms, or terms on one side only, is vacuously consistent
/// across sides but still needs agreement among its own terms. Symbols missing
/// from `syms` make the form inconsistent.
pub fn summands_consistent<C: Coefficient>(f: &OneForm<C>, syms: &SymbolTable) -> bool {
    let (Ok(dp), Ok(dv)) = (syms.get(Symbol::P), syms.get(Symbol::V)) else {
        return false;
    };
    let mut common: Option<Dimension> = None;
    let sides = [(&f.dp, dp), (&f.dv, dv)];
    for (field, differential) in sides {
        for m in field.monomials() {
            let Ok(d) = monomial_dimension(&m, syms) else {
                return false;
            };
            let d = d * differential;
            match common {
                None => common = Some(d),
                Some(c) if c != d => return false,
                Some(_) => {}
            }
        }
    }
    true
}

/// The two linear constraints that unit agreement imposes on
/// `p^α V^β dp + p^α' V^β' dV`: the mass exponents give `α' = α + 1` and the
/// length exponents give `−α + 3β − 1 = −α' + 3β' + 3`. Time and temperature
/// add nothing new.
pub fn exponent_unit_filter(t: ExponentTuple) -> bool {
    let ExponentTuple {
        alpha,
        beta,
        alpha_p,
        beta_p,
    } = t;
    alpha_p == alpha + 1 && -alpha + 3 * beta - 1 == -alpha_p + 3 * beta_p + 3
}
