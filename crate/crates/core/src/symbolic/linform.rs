use std::collections::BTreeMap;
use std::fmt;

use crate::graph::EdgeId;
use crate::scalar::Scalar;
use crate::symbolic::Poly2;

/// Linear form `Σ_ℓ c_ℓ λ_ℓ` over the original edge weights, with
/// polynomial coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinForm {
    coeffs: BTreeMap<EdgeId, Poly2>,
}

impl LinForm {
    pub fn zero() -> Self {
        LinForm::default()
    }

    /// The bare weight `λ_id`.
    pub fn weight(id: EdgeId) -> Self {
        LinForm::term(id, Poly2::one())
    }

    pub fn term(id: EdgeId, coeff: Poly2) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(id, coeff);
        }
        LinForm { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (EdgeId, Poly2)>>(terms: I) -> Self {
        let mut out = LinForm::zero();
        for (id, c) in terms {
            out.add_scaled(&Poly2::one(), &LinForm::term(id, c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, id: EdgeId) -> Poly2 {
        self.coeffs.get(&id).cloned().unwrap_or_default()
    }

    /// `(edge, coefficient)` ascending by edge id.
    pub fn terms(&self) -> impl Iterator<Item = (EdgeId, &Poly2)> + '_ {
        self.coeffs.iter().map(|(&id, c)| (id, c))
    }

    /// `self += scale · src`
    pub fn add_scaled(&mut self, scale: &Poly2, src: &LinForm) {
        if scale.is_zero() {
            return;
        }
        for (&id, c) in &src.coeffs {
            let delta = scale * c;
            let slot = self.coeffs.entry(id).or_default();
            *slot += &delta;
            if slot.is_zero() {
                self.coeffs.remove(&id);
            }
        }
    }

    /// `self + scale · src`
    pub fn axpy(&self, scale: &Poly2, src: &LinForm) -> LinForm {
        let mut out = self.clone();
        out.add_scaled(scale, src);
        out
    }

    /// Substitute integers for `ε`, `ε′`: one integer multiplier per weight.
    pub fn substitute(&self, eps: i64, eps_prime: i64) -> BTreeMap<EdgeId, i64> {
        self.coeffs
            .iter()
            .map(|(&id, c)| (id, c.substitute(eps, eps_prime)))
            .filter(|&(_, c)| c != 0)
            .collect()
    }

    /// Same form with every coefficient replaced by its integer value at
    /// (`eps`, `eps_prime`).
    pub fn specialize(&self, eps: i64, eps_prime: i64) -> LinForm {
        LinForm::from_terms(
            self.substitute(eps, eps_prime)
                .into_iter()
                .map(|(id, c)| (id, Poly2::constant(c))),
        )
    }

    /// [`Poly2::partial`] applied to every coefficient.
    pub fn specialize_partial(&self, eps: Option<i64>, eps_prime: Option<i64>) -> LinForm {
        LinForm::from_terms(self.coeffs.iter().map(|(&id, c)| (id, c.partial(eps, eps_prime))))
    }

    /// Evaluate at numeric `ε`, `ε′` and weights. `weight` returns `None` for
    /// an unknown edge, which is reported back as that edge id.
    pub fn eval<S, F>(&self, eps: &S, eps_prime: &S, mut weight: F) -> Result<S, EdgeId>
    where
        S: Scalar,
        F: FnMut(EdgeId) -> Option<S>,
    {
        let mut acc = S::zero();
        for (&id, c) in &self.coeffs {
            let w = weight(id).ok_or(id)?;
            acc = acc + c.eval(eps, eps_prime) * w;
        }
        Ok(acc)
    }

    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(id, c)| {
                if c.is_one() {
                    format!("λ{id}")
                } else if c.terms().count() == 1 {
                    format!("{}·λ{id}", c.pretty())
                } else {
                    format!("({})·λ{id}", c.pretty())
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}
