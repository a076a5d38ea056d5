use num_bigint::BigInt;
use num_traits::One;

use super::RootDatum;
use crate::error::{Error, Result};
use crate::scalar::{q, Q};
use crate::weight::WeightFunctional;

impl RootDatum {
    /// Dimension of the irreducible module with dominant integral highest
    /// weight `λ`: `∏_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`.
    pub fn weyl_dimension(&self, lambda: &WeightFunctional) -> Result<BigInt> {
        if lambda.is_parametric() {
            return Err(Error::Parametric);
        }
        if lambda.rank() != self.rank() {
            return Err(Error::Invalid(format!(
                "weight of rank {} for {}",
                lambda.rank(),
                self.key()
            )));
        }
        if !lambda.is_dominant_integral() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let c = lambda.constant_part();
        let mut num = Q::one();
        for r in self.positive_roots() {
            let co = self.coroot_of(r);
            let rho: i64 = co.iter().sum();
            let lam: Q = co.iter().zip(&c).map(|(a, x)| q(*a) * x).sum();
            num *= (lam + q(rho)) / q(rho);
        }
        debug_assert!(num.is_integer());
        Ok(num.to_integer())
    }
}
