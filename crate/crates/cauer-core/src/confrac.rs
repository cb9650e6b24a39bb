//! Finite continued fractions of the bracket form
//! `[a1,..,ak] = a1/(1 + a2/(1 + .. a_{k-1}/(1 + a_k)))` over complex
//! scalars, evaluated bottom-up, plus the nesting and head-scaling
//! identities the transfer-function machinery relies on.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default magnitude floor below which a denominator `1 + v` is reported
/// as a pole of the truncated fraction instead of being divided through.
pub const DENOMINATOR_FLOOR: f64 = 1e-300;

/// An ordered, nonempty sequence of finite complex bracket terms.
#[derive(Debug, Clone, PartialEq)]
pub struct CfTerms {
    terms: Vec<Complex64>,
}

impl CfTerms {
    /// Validates that the sequence is nonempty and every term is finite.
    pub fn new(terms: Vec<Complex64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyTerms);
        }
        if let Some(index) = terms.iter().position(|t| !t.is_finite()) {
            return Err(Error::NonFiniteTerm { index });
        }
        Ok(Self { terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn terms(&self) -> &[Complex64] {
        &self.terms
    }
}

/// Folds `terms` around an already-evaluated tail value, bottom-up:
/// the result equals the bracket `[terms.., tail]`.
///
/// `level` in the pole diagnostic is the 1-based position of the term
/// whose division failed; position `terms.len() + 1` refers to the seed
/// tail itself and can never fail.
pub(crate) fn fold_with_tail(
    terms: &[Complex64],
    tail: Complex64,
    floor: f64,
) -> Result<Complex64> {
    let mut value = tail;
    for (index, term) in terms.iter().enumerate().rev() {
        let denom = Complex64::new(1.0, 0.0) + value;
        if denom.norm() < floor {
            return Err(Error::DivisionNearZero { level: index + 1 });
        }
        value = term / denom;
    }
    Ok(value)
}

/// Evaluates `[a1,..,ak]` bottom-up (innermost denominator first).
///
/// `[a1] = a1`; a single-term bracket is returned exactly.
pub fn eval_cf(terms: &CfTerms) -> Result<Complex64> {
    eval_cf_floor(terms, DENOMINATOR_FLOOR)
}

/// As [`eval_cf`] with a caller-chosen denominator floor.
pub fn eval_cf_floor(terms: &CfTerms, floor: f64) -> Result<Complex64> {
    let (last, head) = terms.terms().split_last().expect("CfTerms is nonempty");
    fold_with_tail(head, *last, floor)
}

/// Evaluates `[head.., tail_value]`, i.e. the bracket with the evaluated
/// tail spliced in as the final term: `[a1,..,ak] = [a1, [a2,..,ak]]`.
pub fn nest_cf(head: &CfTerms, tail_value: Complex64) -> Result<Complex64> {
    fold_with_tail(head.terms(), tail_value, DENOMINATOR_FLOOR)
}

/// Evaluates the bracket with its first term multiplied by `alpha`;
/// equal to `alpha * eval_cf(terms)` up to a few ulp.
pub fn scale_cf_head(alpha: Complex64, terms: &CfTerms) -> Result<Complex64> {
    let (first, rest) = terms.terms().split_first().expect("CfTerms is nonempty");
    let scaled_head = alpha * first;
    if rest.is_empty() {
        return Ok(scaled_head);
    }
    let (last, mid) = rest.split_last().expect("rest is nonempty");
    // Levels inside `mid` are shifted by one relative to the full bracket.
    let tail = fold_with_tail(mid, *last, DENOMINATOR_FLOOR).map_err(|e| match e {
        Error::DivisionNearZero { level } => Error::DivisionNearZero { level: level + 1 },
        other => other,
    })?;
    fold_with_tail(&[scaled_head], tail, DENOMINATOR_FLOOR)
}
