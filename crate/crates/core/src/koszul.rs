//! Koszul differentials over ℤ[x₁^{±1}, …, xₙ^{±1}].
//!
//! Basis elements of degree k are strictly increasing index lists
//! e_{i₁} ∧ … ∧ e_{i_k}; the differential is
//! d(e_{i₁} ∧ … ∧ e_{i_k}) = Σⱼ (−1)^{k−j} (x_{iⱼ} − 1) e_{i₁} ∧ … ê_{iⱼ} … ∧ e_{i_k}.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{LaurentPoly, Vars};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KoszulError {
    #[error("differential degree {0} is outside 1..=3")]
    Degree(usize),
    #[error("basis element has {found} factors but degree {expected} was requested")]
    Arity { expected: usize, found: usize },
    #[error("index {0} is not a variable")]
    Index(usize),
}

/// Sorts a wedge of indices, returning `None` for a repeated index and
/// otherwise the sorted list with the sign of the sorting permutation.
pub fn normalize_wedge(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut negative = false;
    // Bubble sort tracks the permutation parity; wedges are tiny.
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                negative = !negative;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

/// A finite combination of wedge basis elements with Laurent coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulElement {
    vars: Vars,
    terms: BTreeMap<Vec<usize>, LaurentPoly<BigInt>>,
}

impl KoszulElement {
    pub fn zero(vars: &Vars) -> Self {
        KoszulElement {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The basis element e_{i₁} ∧ … with the given (unsorted) indices.
    pub fn basis(vars: &Vars, indices: &[usize]) -> Self {
        let mut e = KoszulElement::zero(vars);
        if let Some((w, neg)) = normalize_wedge(indices) {
            let one = LaurentPoly::one(vars, &());
            e.add_term(w, if neg { -one } else { one });
        }
        e
    }

    pub fn add_term(&mut self, wedge: Vec<usize>, c: LaurentPoly<BigInt>) {
        let sum = match self.terms.remove(&wedge) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(wedge, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &LaurentPoly<BigInt>)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, wedge: &[usize]) -> Option<&LaurentPoly<BigInt>> {
        self.terms.get(wedge)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies the differential to every term, whatever its degree.
    pub fn differential(&self) -> KoszulElement {
        let mut out = KoszulElement::zero(&self.vars);
        for (wedge, c) in &self.terms {
            for (w, d) in boundary(&self.vars, wedge) {
                out.add_term(w, c * &d);
            }
        }
        out
    }
}

impl fmt::Display for KoszulElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let wedge: Vec<String> = w.iter().map(|&i| format!("e_{}", self.vars[i])).collect();
                let wedge = if wedge.is_empty() {
                    "1".to_string()
                } else {
                    wedge.join("^")
                };
                format!("({c})*{wedge}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn boundary(vars: &Vars, wedge: &[usize]) -> Vec<(Vec<usize>, LaurentPoly<BigInt>)> {
    let k = wedge.len();
    let one = LaurentPoly::one(vars, &());
    (0..k)
        .map(|j| {
            let mut rest = wedge.to_vec();
            let x = rest.remove(j);
            let factor = &LaurentPoly::var(vars, &(), x) - &one;
            // Position j is 0-based here, so the sign is (−1)^{k−1−j}.
            let c = if (k - 1 - j).is_multiple_of(2) { factor } else { -factor };
            (rest, c)
        })
        .collect()
}

/// d_k applied to one basis element.
pub fn koszul_differential(k: usize, vars: &Vars, indices: &[usize]) -> Result<KoszulElement, KoszulError> {
    if !(1..=3).contains(&k) {
        return Err(KoszulError::Degree(k));
    }
    if indices.len() != k {
        return Err(KoszulError::Arity {
            expected: k,
            found: indices.len(),
        });
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= vars.len()) {
        return Err(KoszulError::Index(bad));
    }
    Ok(KoszulElement::basis(vars, indices).differential())
}
