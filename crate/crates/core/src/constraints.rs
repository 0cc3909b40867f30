//! Predicates on codes, tagged by how they behave under the parent
//! operations of the two generation modes.
//!
//! Column mode removes a coordinate by puncturing, row mode by shortening.
//! A predicate can be enforced at every intermediate level only when it is
//! inherited by the parent; otherwise it waits for the final length.

use log::warn;
use thiserror::Error;

use crate::canon::Mode;
use crate::code::{CodeError, LinearCode};
use crate::gf::{Field, Form};
use crate::packed::MAX_LEN;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("the Hermitian form needs q = 4, got q = {0}")]
    HermitianField(u8),
    #[error("d = {d} exceeds the Singleton bound n - k + 1 = {bound}")]
    Singleton { d: usize, bound: usize },
    #[error("divisor must be at least 2, got {0}")]
    Divisor(u32),
    #[error("dual distance target must be at least 1")]
    DualDistance,
    #[error("minimum distance target must be at least 1")]
    MinDistance,
    #[error("need 1 <= k <= n <= {max}, got n = {n}, k = {k}")]
    Shape { n: usize, k: usize, max: usize },
    #[error("row mode needs d >= 2")]
    RowModeDistance,
    #[error("seed {index}: {reason}")]
    Seed { index: usize, reason: String },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Parent operations a predicate survives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Heredity {
    pub puncture: bool,
    pub shorten: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredicateKind {
    /// Minimum distance at least the target (fixed in row mode, scheduled in
    /// column mode).
    MinDistance,
    DualDistance,
    SelfOrthogonal(Form),
    Divisible(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Predicate {
    pub kind: PredicateKind,
    pub heredity: Heredity,
}

impl Predicate {
    pub fn new(kind: PredicateKind) -> Predicate {
        let heredity = match kind {
            PredicateKind::DualDistance => Heredity { puncture: true, shorten: true },
            // only through the distance schedule under puncturing
            PredicateKind::MinDistance => Heredity { puncture: true, shorten: true },
            PredicateKind::SelfOrthogonal(_) | PredicateKind::Divisible(_) => Heredity { puncture: false, shorten: true },
        };
        Predicate { kind, heredity }
    }

    pub fn hereditary_for(&self, mode: Mode) -> bool {
        match mode {
            Mode::Column => self.heredity.puncture,
            Mode::Row => self.heredity.shorten,
        }
    }
}

/// Requested properties of the final codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintSet {
    pub d: usize,
    pub d_dual: usize,
    pub so: Option<Form>,
    pub divisor: Option<u32>,
}

impl Default for ConstraintSet {
    fn default() -> Self {
        ConstraintSet { d: 1, d_dual: 1, so: None, divisor: None }
    }
}

impl ConstraintSet {
    pub fn predicates(&self) -> Vec<Predicate> {
        let mut out = vec![Predicate::new(PredicateKind::MinDistance), Predicate::new(PredicateKind::DualDistance)];
        if let Some(form) = self.so {
            out.push(Predicate::new(PredicateKind::SelfOrthogonal(form)));
        }
        if let Some(delta) = self.divisor {
            out.push(Predicate::new(PredicateKind::Divisible(delta)));
        }
        out
    }
}

/// `max(1, d - (n - k) + i)`: minimum distance required of the column-mode
/// code of length `k + i`.
pub fn distance_schedule(n: usize, k: usize, d: usize, i: usize) -> usize {
    (d + i).saturating_sub(n - k).max(1)
}

/// `max(1, d_dual - (k - s))`: dual distance required of the row-mode code
/// of dimension `s`.
pub fn dual_schedule(k: usize, d_dual: usize, s: usize) -> usize {
    (d_dual + s).saturating_sub(k).max(1)
}

/// A constraint set checked against a field, shape and mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validated {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub set: ConstraintSet,
    pub step: Vec<Predicate>,
    pub final_only: Vec<Predicate>,
    pub warnings: Vec<String>,
}

pub fn validate(field: Field, n: usize, k: usize, mode: Mode, set: ConstraintSet) -> Result<Validated, ConstraintError> {
    if k == 0 || k > n || n > MAX_LEN {
        return Err(ConstraintError::Shape { n, k, max: MAX_LEN });
    }
    if set.so == Some(Form::Hermitian) && field.q() != 4 {
        return Err(ConstraintError::HermitianField(field.q()));
    }
    if set.d == 0 {
        return Err(ConstraintError::MinDistance);
    }
    if set.d_dual == 0 {
        return Err(ConstraintError::DualDistance);
    }
    if set.d > n - k + 1 {
        return Err(ConstraintError::Singleton { d: set.d, bound: n - k + 1 });
    }
    if let Some(delta) = set.divisor {
        if delta < 2 {
            return Err(ConstraintError::Divisor(delta));
        }
    }
    if mode == Mode::Row && set.d < 2 {
        return Err(ConstraintError::RowModeDistance);
    }
    let mut step = Vec::new();
    let mut final_only = Vec::new();
    let mut warnings = Vec::new();
    for p in set.predicates() {
        if p.hereditary_for(mode) {
            step.push(p);
        } else {
            let msg = format!("{:?} is not inherited in {:?} mode; checked on final codes only", p.kind, mode);
            warn!("{msg}");
            warnings.push(msg);
            final_only.push(p);
        }
    }
    Ok(Validated { field, n, k, mode, set, step, final_only, warnings })
}

impl Validated {
    /// Level of an intermediate code: appended columns in column mode, the
    /// dimension in row mode.
    pub fn level_of(&self, code: &LinearCode) -> usize {
        match self.mode {
            Mode::Column => code.n() - self.k,
            Mode::Row => code.k(),
        }
    }

    /// Number of levels below the final one.
    pub fn final_level(&self) -> usize {
        match self.mode {
            Mode::Column => self.n - self.k,
            Mode::Row => self.k,
        }
    }

    /// Length and dimension of codes at `level`.
    pub fn shape_at(&self, level: usize) -> (usize, usize) {
        match self.mode {
            Mode::Column => (self.k + level, self.k),
            Mode::Row => (self.n - self.k + level, level),
        }
    }

    pub fn distance_at(&self, level: usize) -> usize {
        match self.mode {
            Mode::Column => distance_schedule(self.n, self.k, self.set.d, level),
            Mode::Row => self.set.d,
        }
    }

    pub fn dual_distance_at(&self, level: usize) -> usize {
        match self.mode {
            Mode::Column => self.set.d_dual,
            Mode::Row => dual_schedule(self.k, self.set.d_dual, level),
        }
    }

    fn holds(&self, code: &LinearCode, p: &Predicate, level: usize) -> Result<bool, CodeError> {
        Ok(match p.kind {
            PredicateKind::MinDistance => code.min_distance_at_least(self.distance_at(level))?,
            PredicateKind::DualDistance => code.dual_distance_at_least(self.dual_distance_at(level)),
            PredicateKind::SelfOrthogonal(form) => code.is_self_orthogonal(form)?,
            PredicateKind::Divisible(delta) => code.is_divisible(delta)?,
        })
    }

    /// Schedule distances and the predicates inherited in this mode.
    pub fn check_step(&self, code: &LinearCode, level: usize) -> Result<bool, CodeError> {
        for p in &self.step {
            if !self.holds(code, p, level)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every predicate at full strength on a code of the final shape.
    pub fn check_final(&self, code: &LinearCode) -> Result<bool, CodeError> {
        if code.n() != self.n || code.k() != self.k {
            return Ok(false);
        }
        self.check_complete(code)
    }

    /// Every predicate at full strength, whatever the shape. Row-mode
    /// levels that pass this are members of the final class for their own
    /// length and dimension.
    pub fn check_complete(&self, code: &LinearCode) -> Result<bool, CodeError> {
        if !code.min_distance_at_least(self.set.d)? || !code.dual_distance_at_least(self.set.d_dual) {
            return Ok(false);
        }
        if let Some(form) = self.set.so {
            if !code.is_self_orthogonal(form)? {
                return Ok(false);
            }
        }
        if let Some(delta) = self.set.divisor {
            if !code.is_divisible(delta)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Divisor every weight must have, including divisibility implied by
    /// self-orthogonality.
    pub fn effective_divisor(&self) -> u32 {
        let q = self.field.q();
        let implied = match self.set.so {
            Some(_) if q == 2 => 2,
            Some(Form::Euclidean) if q == 3 => 3,
            Some(Form::Hermitian) => 2,
            _ => 1,
        };
        let requested = self.set.divisor.unwrap_or(1);
        lcm(implied, requested)
    }

    /// Self-orthogonality requested or implied by the requested divisor.
    pub fn effective_form(&self) -> Option<Form> {
        if self.set.so.is_some() {
            return self.set.so;
        }
        let delta = self.set.divisor?;
        match self.field.q() {
            2 if delta % 4 == 0 => Some(Form::Euclidean),
            3 if delta % 3 == 0 => Some(Form::Euclidean),
            4 if delta % 2 == 0 => Some(Form::Hermitian),
            _ => None,
        }
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}
