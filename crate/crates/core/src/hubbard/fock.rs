//! Occupation-number basis for eight fermionic modes (four dots × two spins).
//!
//! Mode `2·dot + spin` (spin 0 = ↑) is bit `2·dot + spin` of the state. A
//! creation operator on mode `j` picks up the sign `(−1)^(number of occupied
//! modes below j)`, and the single-occupation state with spins `(s₁…s₄)` is
//! the bitstring with those four bits set, with sign +1.

use num_complex::Complex64;

use crate::linalg::ComplexOperator;

pub const N_DOTS: usize = 4;
pub const N_MODES: usize = 8;
pub const FULL_DIM: usize = 1 << N_MODES;

pub fn mode(dot: usize, spin: usize) -> usize {
    2 * dot + spin
}

/// `c†_j |state⟩` as `(new state, sign)`, or `None` when the mode is full.
pub fn create(state: u16, j: usize) -> Option<(u16, f64)> {
    let bit = 1u16 << j;
    if state & bit != 0 {
        return None;
    }
    Some((state | bit, sign_below(state, j)))
}

/// `c_j |state⟩` as `(new state, sign)`, or `None` when the mode is empty.
pub fn annihilate(state: u16, j: usize) -> Option<(u16, f64)> {
    let bit = 1u16 << j;
    if state & bit == 0 {
        return None;
    }
    Some((state & !bit, sign_below(state, j)))
}

fn sign_below(state: u16, j: usize) -> f64 {
    if (state & ((1u16 << j) - 1)).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Applies a product of ladder operators, rightmost first. Each entry is
/// `(mode, is_creation)`.
pub fn apply_string(state: u16, ops: &[(usize, bool)]) -> Option<(u16, f64)> {
    let mut s = state;
    let mut sign = 1.0;
    for &(j, dagger) in ops.iter().rev() {
        let (next, sg) = if dagger { create(s, j)? } else { annihilate(s, j)? };
        s = next;
        sign *= sg;
    }
    Some((s, sign))
}

/// Fock state of the single-occupation configuration with the given spin
/// index (`8·b₁ + 4·b₂ + 2·b₃ + b₄`, `b = 1` for down).
pub fn spin_state_to_fock(spin_index: usize) -> u16 {
    (0..N_DOTS).fold(0u16, |acc, dot| {
        let down = (spin_index >> (N_DOTS - 1 - dot)) & 1;
        acc | (1 << mode(dot, down))
    })
}

pub fn is_doubly_occupied(state: u16, dot: usize) -> bool {
    let pair = 0b11u16 << (2 * dot);
    state & pair == pair
}

/// An ordered subset of the 256 occupation states.
#[derive(Debug, Clone)]
pub struct FockBasis {
    states: Vec<u16>,
    index: Vec<Option<usize>>,
}

impl FockBasis {
    pub fn full() -> Self {
        Self::from_states((0..FULL_DIM as u16).collect())
    }

    /// States with no dot doubly occupied (81 states), for infinite Coulomb
    /// repulsion.
    pub fn without_double_occupancy() -> Self {
        Self::from_states(
            (0..FULL_DIM as u16)
                .filter(|&s| (0..N_DOTS).all(|d| !is_doubly_occupied(s, d)))
                .collect(),
        )
    }

    fn from_states(states: Vec<u16>) -> Self {
        let mut index = vec![None; FULL_DIM];
        for (k, &s) in states.iter().enumerate() {
            index[s as usize] = Some(k);
        }
        Self { states, index }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[u16] {
        &self.states
    }

    pub fn index_of(&self, state: u16) -> Option<usize> {
        self.index[state as usize]
    }

    /// Positions of the 16 single-occupation states in spin-index order.
    pub fn spin_sector(&self) -> Vec<usize> {
        (0..16)
            .map(|i| self.index_of(spin_state_to_fock(i)).expect("single-occupation states are always present"))
            .collect()
    }

    /// Matrix of a ladder-operator string within this basis. Components
    /// leaving the basis are dropped.
    pub fn operator(&self, ops: &[(usize, bool)]) -> ComplexOperator {
        let mut m = ComplexOperator::zeros(self.len());
        for (col, &s) in self.states.iter().enumerate() {
            if let Some((t, sign)) = apply_string(s, ops) {
                if let Some(row) = self.index_of(t) {
                    m[(row, col)] = Complex64::new(sign, 0.0);
                }
            }
        }
        m
    }

    pub fn creation(&self, j: usize) -> ComplexOperator {
        self.operator(&[(j, true)])
    }

    pub fn annihilation(&self, j: usize) -> ComplexOperator {
        self.operator(&[(j, false)])
    }

    /// `(−1)^N` on each basis state.
    pub fn parity(&self) -> ComplexOperator {
        let diag: Vec<f64> = self
            .states
            .iter()
            .map(|s| if s.count_ones() % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        ComplexOperator::from_real_diagonal(&diag)
    }
}
