use std::fmt;

use super::Poly;
use crate::error::{Error, Result};

/// A derivation `sum_j c_j d/dx_j` of `Q[x1, ..., xm]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    components: Vec<Poly>,
}

impl Derivation {
    pub fn zero(nvars: usize) -> Self {
        Derivation {
            components: vec![Poly::zero(nvars); nvars],
        }
    }

    /// `d/dx_{index+1}`.
    pub fn partial(nvars: usize, index: usize) -> Result<Self> {
        let mut d = Self::zero(nvars);
        if index >= nvars {
            return Err(Error::VariableIndex {
                index: index + 1,
                nvars,
            });
        }
        d.components[index] = Poly::one(nvars);
        Ok(d)
    }

    pub fn new(nvars: usize, components: Vec<Poly>) -> Result<Self> {
        if components.len() != nvars {
            return Err(Error::VariableCount(nvars, components.len()));
        }
        if let Some(p) = components.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::VariableCount(nvars, p.nvars()));
        }
        Ok(Derivation { components })
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if p.nvars() != self.nvars() {
            return Err(Error::VariableCount(self.nvars(), p.nvars()));
        }
        Ok(self.apply_unchecked(p))
    }

    pub(crate) fn apply_unchecked(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.nvars());
        for (j, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let dp = p.partial_derivative(j).expect("index in range");
            if !dp.is_zero() {
                out = &out + &(c * &dp);
            }
        }
        out
    }

    /// `[self, other] = self o other - other o self`, again a derivation.
    pub fn commutator(&self, other: &Derivation) -> Result<Derivation> {
        if self.nvars() != other.nvars() {
            return Err(Error::VariableCount(self.nvars(), other.nvars()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| &self.apply_unchecked(b) - &other.apply_unchecked(a))
            .collect();
        Ok(Derivation { components })
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        if self.nvars() != other.nvars() {
            return Err(Error::VariableCount(self.nvars(), other.nvars()));
        }
        Ok(Derivation {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `a * self`; derivations form an `A`-module.
    pub fn scale(&self, a: &Poly) -> Derivation {
        Derivation {
            components: self.components.iter().map(|c| a * c).collect(),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*d/dx{}", j + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (Poly, Poly) {
        (Poly::var(2, 0).unwrap(), Poly::var(2, 1).unwrap())
    }

    #[test]
    fn euler_operator_on_square() {
        let (x, _) = xy();
        let d = Derivation::new(2, vec![x.clone(), Poly::zero(2)]).unwrap();
        assert_eq!(d.apply(&x.pow(2)).unwrap(), &x.pow(2) + &x.pow(2));
    }

    #[test]
    fn constants_are_killed() {
        let d = Derivation::partial(2, 0).unwrap();
        assert!(d.apply(&Poly::int(2, 7)).unwrap().is_zero());
    }

    #[test]
    fn rotation_type_field_on_xy() {
        // (y d/dx + x d/dy)(xy) = y*y + x*x
        let (x, y) = xy();
        let d = Derivation::new(2, vec![y.clone(), x.clone()]).unwrap();
        assert_eq!(d.apply(&(&x * &y)).unwrap(), &x.pow(2) + &y.pow(2));
    }

    #[test]
    fn commutators() {
        let (x, _) = xy();
        let dx = Derivation::partial(2, 0).unwrap();
        let dy = Derivation::partial(2, 1).unwrap();
        assert!(dx.commutator(&dy).unwrap().is_zero());

        // [x d/dx, d/dx] = -d/dx; checked on 1, x, x^2, x^3 by expanding
        // x (d/dx)^2 p - d/dx (x p') = -p'.
        let euler = Derivation::new(2, vec![x.clone(), Poly::zero(2)]).unwrap();
        let c = euler.commutator(&dx).unwrap();
        assert_eq!(c, dx.scale(&Poly::int(2, -1)));
        for k in 0..4 {
            let p = x.pow(k);
            let expected =
                &euler.apply(&dx.apply(&p).unwrap()).unwrap() - &dx.apply(&euler.apply(&p).unwrap()).unwrap();
            assert_eq!(c.apply(&p).unwrap(), expected);
        }
        assert!(euler.commutator(&euler).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        let d = Derivation::partial(2, 0).unwrap();
        assert_eq!(d.apply(&Poly::one(3)), Err(Error::VariableCount(2, 3)));
        assert!(Derivation::partial(2, 2).is_err());
    }
}
