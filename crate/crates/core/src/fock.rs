//! Occupation-number states over a finite mode set with one unpaired zero
//! mode, and the exact spectrum of the regularized charge operator.
//!
//! Particle (`b`) and hole (`d`) modes come in conjugate pairs at opposite
//! energies; the zero mode (`a`) has no partner, so its two-state degeneracy
//! is where the half-integer lives. Symmetric ordering of `psi^dag psi`
//! turns the formal charge into
//!
//! ```text
//! Q = sum_E (b_E^dag b_E - d_E^dag d_E) + a^dag a - 1/2
//! ```
//!
//! which is diagonal on occupation states with exactly half-integer
//! eigenvalues: the empty zero mode carries -1/2, the filled one +1/2, and
//! every basis state is a zero-variance charge eigenstate. Truncating to
//! finitely many paired modes is exact for finitely excited states because
//! the infinite sum only contributes through occupied modes. Everything in
//! this module is exact rational arithmetic; no floats.
//!
//! The defining relations are `a|+> = |->`, `a|-> = 0`, `a^dag|-> = |+>`,
//! `a^dag|+> = 0`, the standard fermion algebra completed in the only way
//! consistent with `{a, a^dag} = 1`.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("mode labels must be distinct, {label} repeats")]
    DuplicateLabel { label: u32 },
    #[error("unknown mode label {label}")]
    UnknownLabel { label: u32 },
    #[error("state occupies the zero mode but the mode set has none")]
    ZeroModeAbsent,
    #[error("K = {k} exceeds the limit {max_k} (Fock dimension 2^(2K+1))")]
    DimensionTooLarge { k: usize, max_k: usize },
    #[error("canonical anticommutation relations violated: {identity}")]
    AlgebraViolation { identity: String },
}

/// Finite set of conjugate mode pairs, optionally with the unpaired zero mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeSet {
    labels: Vec<u32>,
    has_zero_mode: bool,
}

impl ModeSet {
    pub fn new(mut labels: Vec<u32>, has_zero_mode: bool) -> Result<ModeSet, FockError> {
        labels.sort_unstable();
        for pair in labels.windows(2) {
            if pair[0] == pair[1] {
                return Err(FockError::DuplicateLabel { label: pair[0] });
            }
        }
        Ok(ModeSet {
            labels,
            has_zero_mode,
        })
    }

    /// Labels `1..=k` plus the zero mode.
    pub fn with_zero_mode(k: usize) -> ModeSet {
        ModeSet {
            labels: (1..=k as u32).collect(),
            has_zero_mode: true,
        }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn has_zero_mode(&self) -> bool {
        self.has_zero_mode
    }

    pub fn k(&self) -> usize {
        self.labels.len()
    }

    /// Number of fermionic slots: `b` modes, `d` modes, and the zero mode.
    pub fn slots(&self) -> usize {
        2 * self.k() + usize::from(self.has_zero_mode)
    }

    pub fn fock_dimension(&self) -> usize {
        1usize << self.slots()
    }

    /// Global ordering for fermionic signs: `b` modes by ascending label,
    /// then `d` modes by ascending label, the zero mode last.
    fn slot_of(&self, band: Band, label: u32) -> Result<usize, FockError> {
        match band {
            Band::Zero => {
                if self.has_zero_mode {
                    Ok(2 * self.k())
                } else {
                    Err(FockError::ZeroModeAbsent)
                }
            }
            Band::Particle | Band::Hole => {
                let i = self
                    .labels
                    .binary_search(&label)
                    .map_err(|_| FockError::UnknownLabel { label })?;
                Ok(match band {
                    Band::Particle => i,
                    Band::Hole => self.k() + i,
                    Band::Zero => unreachable!(),
                })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Band {
    Particle,
    Hole,
    Zero,
}

/// One ladder operator of the expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ladder {
    /// Zero-mode annihilator `a`.
    A,
    /// Zero-mode creator `a^dag`.
    ADag,
    /// Conduction-band annihilator `b_E`.
    B(u32),
    /// Conduction-band creator `b_E^dag`.
    BDag(u32),
    /// Valence-hole annihilator `d_E`.
    D(u32),
    /// Valence-hole creator `d_E^dag`.
    DDag(u32),
}

impl Ladder {
    fn band_label(self) -> (Band, u32, bool) {
        match self {
            Ladder::A => (Band::Zero, 0, false),
            Ladder::ADag => (Band::Zero, 0, true),
            Ladder::B(l) => (Band::Particle, l, false),
            Ladder::BDag(l) => (Band::Particle, l, true),
            Ladder::D(l) => (Band::Hole, l, false),
            Ladder::DDag(l) => (Band::Hole, l, true),
        }
    }
}

/// Occupation-number basis state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockState {
    b_occ: BTreeSet<u32>,
    d_occ: BTreeSet<u32>,
    a_occ: bool,
}

impl FockState {
    pub fn new(
        modes: &ModeSet,
        b_occ: BTreeSet<u32>,
        d_occ: BTreeSet<u32>,
        a_occ: bool,
    ) -> Result<FockState, FockError> {
        for &l in b_occ.iter().chain(&d_occ) {
            if modes.labels.binary_search(&l).is_err() {
                return Err(FockError::UnknownLabel { label: l });
            }
        }
        if a_occ && !modes.has_zero_mode {
            return Err(FockError::ZeroModeAbsent);
        }
        Ok(FockState {
            b_occ,
            d_occ,
            a_occ,
        })
    }

    /// `|->`: everything empty, zero mode included.
    pub fn minus() -> FockState {
        FockState {
            b_occ: BTreeSet::new(),
            d_occ: BTreeSet::new(),
            a_occ: false,
        }
    }

    /// `|+>`: only the zero mode filled.
    pub fn plus(modes: &ModeSet) -> Result<FockState, FockError> {
        if !modes.has_zero_mode {
            return Err(FockError::ZeroModeAbsent);
        }
        Ok(FockState {
            b_occ: BTreeSet::new(),
            d_occ: BTreeSet::new(),
            a_occ: true,
        })
    }

    pub fn b_occ(&self) -> &BTreeSet<u32> {
        &self.b_occ
    }

    pub fn d_occ(&self) -> &BTreeSet<u32> {
        &self.d_occ
    }

    pub fn a_occ(&self) -> bool {
        self.a_occ
    }

    /// Particle-hole image: `b <-> d`, zero-mode occupation flipped.
    pub fn conjugated(&self) -> FockState {
        FockState {
            b_occ: self.d_occ.clone(),
            d_occ: self.b_occ.clone(),
            a_occ: !self.a_occ,
        }
    }

    fn slot_occupied(&self, modes: &ModeSet, slot: usize) -> bool {
        let k = modes.k();
        if slot < k {
            self.b_occ.contains(&modes.labels[slot])
        } else if slot < 2 * k {
            self.d_occ.contains(&modes.labels[slot - k])
        } else {
            self.a_occ
        }
    }

    fn set_slot(&mut self, modes: &ModeSet, slot: usize, value: bool) {
        let k = modes.k();
        if slot < k {
            let l = modes.labels[slot];
            if value {
                self.b_occ.insert(l);
            } else {
                self.b_occ.remove(&l);
            }
        } else if slot < 2 * k {
            let l = modes.labels[slot - k];
            if value {
                self.d_occ.insert(l);
            } else {
                self.d_occ.remove(&l);
            }
        } else {
            self.a_occ = value;
        }
    }

    /// Basis index with slot `p` on bit `p`.
    pub fn index(&self, modes: &ModeSet) -> usize {
        let mut idx = 0usize;
        for slot in 0..modes.slots() {
            if self.slot_occupied(modes, slot) {
                idx |= 1 << slot;
            }
        }
        idx
    }

    /// Inverse of [`FockState::index`].
    pub fn from_index(modes: &ModeSet, index: usize) -> FockState {
        let mut state = FockState::minus();
        for slot in 0..modes.slots() {
            if index & (1 << slot) != 0 {
                state.set_slot(modes, slot, true);
            }
        }
        state
    }
}

/// Result of a ladder operator acting on a basis state: another basis state
/// with a fermionic sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedState {
    pub sign: i8,
    pub state: FockState,
}

/// Applies one ladder operator. `None` means the state is annihilated
/// (Pauli blocking); otherwise the sign is `(-1)^(occupied slots below)` in
/// the fixed global ordering.
pub fn apply_ladder(
    modes: &ModeSet,
    state: &FockState,
    op: Ladder,
) -> Result<Option<SignedState>, FockError> {
    let (band, label, create) = op.band_label();
    let slot = modes.slot_of(band, label)?;
    let occupied = state.slot_occupied(modes, slot);
    if create == occupied {
        return Ok(None);
    }
    let mut below = 0usize;
    for p in 0..slot {
        if state.slot_occupied(modes, p) {
            below += 1;
        }
    }
    let mut next = state.clone();
    next.set_slot(modes, slot, create);
    Ok(Some(SignedState {
        sign: if below % 2 == 0 { 1 } else { -1 },
        state: next,
    }))
}

/// Exact eigenvalue of the regularized charge on a basis state:
/// `|b| - |d| + a - 1/2` when the zero mode exists, `|b| - |d|` otherwise.
pub fn charge_eigenvalue(modes: &ModeSet, state: &FockState) -> Rational64 {
    let mut q = Rational64::new(state.b_occ.len() as i64 - state.d_occ.len() as i64, 1);
    if modes.has_zero_mode {
        q += Rational64::new(i64::from(state.a_occ), 1);
        q -= Rational64::new(1, 2);
    }
    q
}

/// `<Q^2> - <Q>^2` on a basis state. The charge operator is diagonal in this
/// basis, so the variance is identically zero, computed exactly.
pub fn charge_variance(modes: &ModeSet, state: &FockState) -> Rational64 {
    let q = charge_eigenvalue(modes, state);
    q * q - q * q
}

/// Dense matrix over exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rational64>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> RatMatrix {
        RatMatrix {
            n,
            data: vec![Rational64::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Rational64::one();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Rational64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = RatMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x += *y;
        }
        out
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x -= *y;
        }
        out
    }

    pub fn scaled(&self, factor: Rational64) -> RatMatrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= factor;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational64::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.data.iter().enumerate().all(|(idx, v)| {
            let expect = if idx / n == idx % n {
                Rational64::one()
            } else {
                Rational64::zero()
            };
            *v == expect
        })
    }
}

/// `{x, y} = xy + yx`.
pub fn anticommutator(x: &RatMatrix, y: &RatMatrix) -> RatMatrix {
    x.mul(y).add(&y.mul(x))
}

/// `[x, y] = xy - yx`.
pub fn commutator(x: &RatMatrix, y: &RatMatrix) -> RatMatrix {
    x.mul(y).sub(&y.mul(x))
}

/// Matrix of a ladder operator on the full Fock space.
pub fn ladder_matrix(modes: &ModeSet, op: Ladder) -> Result<RatMatrix, FockError> {
    let dim = modes.fock_dimension();
    let mut m = RatMatrix::zeros(dim);
    for col in 0..dim {
        let state = FockState::from_index(modes, col);
        if let Some(signed) = apply_ladder(modes, &state, op)? {
            let row = signed.state.index(modes);
            m.set(row, col, Rational64::new(signed.sign as i64, 1));
        }
    }
    Ok(m)
}

/// The regularized charge as a Fock-space matrix, assembled from the ladder
/// matrices term by term.
pub fn charge_matrix(modes: &ModeSet) -> Result<RatMatrix, FockError> {
    let dim = modes.fock_dimension();
    let mut q = RatMatrix::zeros(dim);
    for &l in &modes.labels {
        let b = ladder_matrix(modes, Ladder::B(l))?;
        let bdag = ladder_matrix(modes, Ladder::BDag(l))?;
        let d = ladder_matrix(modes, Ladder::D(l))?;
        let ddag = ladder_matrix(modes, Ladder::DDag(l))?;
        q = q.add(&bdag.mul(&b)).sub(&ddag.mul(&d));
    }
    if modes.has_zero_mode {
        let a = ladder_matrix(modes, Ladder::A)?;
        let adag = ladder_matrix(modes, Ladder::ADag)?;
        q = q.add(&adag.mul(&a));
        q = q.sub(&RatMatrix::identity(dim).scaled(Rational64::new(1, 2)));
    }
    Ok(q)
}

/// Summary of an exhaustive canonical-anticommutation check.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CarReport {
    pub dimension: usize,
    pub identities_checked: usize,
}

/// Materializes every ladder operator on the full Fock space and verifies,
/// in exact arithmetic: `{c_p, c_q^dag} = delta_pq`, `{c_p, c_q} = 0`, that
/// the assembled charge matches its diagonal eigenvalue formula, and that
/// the charge commutes with every number operator.
pub fn verify_car_algebra(modes: &ModeSet, max_k: usize) -> Result<CarReport, FockError> {
    if modes.k() > max_k {
        return Err(FockError::DimensionTooLarge {
            k: modes.k(),
            max_k,
        });
    }
    let dim = modes.fock_dimension();
    let mut annihilators: Vec<Ladder> = Vec::new();
    for &l in &modes.labels {
        annihilators.push(Ladder::B(l));
        annihilators.push(Ladder::D(l));
    }
    if modes.has_zero_mode {
        annihilators.push(Ladder::A);
    }
    let creators: Vec<Ladder> = annihilators
        .iter()
        .map(|op| match op {
            Ladder::A => Ladder::ADag,
            Ladder::B(l) => Ladder::BDag(*l),
            Ladder::D(l) => Ladder::DDag(*l),
            _ => unreachable!(),
        })
        .collect();
    let cs: Vec<RatMatrix> = annihilators
        .iter()
        .map(|&op| ladder_matrix(modes, op))
        .collect::<Result<_, _>>()?;
    let cdags: Vec<RatMatrix> = creators
        .iter()
        .map(|&op| ladder_matrix(modes, op))
        .collect::<Result<_, _>>()?;

    let mut identities_checked = 0usize;
    for (p, cp) in cs.iter().enumerate() {
        for (q, cq) in cs.iter().enumerate() {
            // {c_p, c_q} = 0 and {c_p, c_q^dag} = delta_pq.
            if !anticommutator(cp, cq).is_zero() {
                return Err(FockError::AlgebraViolation {
                    identity: format!("{{c_{p}, c_{q}}} != 0"),
                });
            }
            identities_checked += 1;
            let mixed = anticommutator(cp, &cdags[q]);
            let ok = if p == q {
                mixed.is_identity()
            } else {
                mixed.is_zero()
            };
            if !ok {
                return Err(FockError::AlgebraViolation {
                    identity: format!("{{c_{p}, c_{q}^dag}} != delta_pq"),
                });
            }
            identities_checked += 1;
        }
    }

    // Charge operator: the ladder assembly must reproduce the diagonal
    // eigenvalue formula.
    let q_op = charge_matrix(modes)?;
    for col in 0..dim {
        let state = FockState::from_index(modes, col);
        let expect = charge_eigenvalue(modes, &state);
        for row in 0..dim {
            let want = if row == col {
                expect
            } else {
                Rational64::zero()
            };
            if q_op.get(row, col) != want {
                return Err(FockError::AlgebraViolation {
                    identity: format!(
                        "charge operator entry ({row}, {col}) is {} instead of {want}",
                        q_op.get(row, col)
                    ),
                });
            }
        }
    }
    identities_checked += 1;

    // Q commutes with every number operator.
    for (cp, cdagp) in cs.iter().zip(&cdags) {
        let number = cdagp.mul(cp);
        if !commutator(&q_op, &number).is_zero() {
            return Err(FockError::AlgebraViolation {
                identity: "charge does not commute with a number operator".into(),
            });
        }
        identities_checked += 1;
    }

    Ok(CarReport {
        dimension: dim,
        identities_checked,
    })
}
