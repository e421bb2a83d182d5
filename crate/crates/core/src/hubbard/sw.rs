//! Effective Hamiltonians on a low-energy subspace: second-order
//! Schrieffer-Wolff and the exact block-diagonalizing reduction.

use std::collections::VecDeque;

use num_complex::Complex64;

use crate::linalg::{eigh, ensure_same_dim, ComplexOperator};
use crate::{Error, Result};

/// States closer than this (μeV) across the subspace boundary are degenerate.
const DEGENERACY_TOL: f64 = 1e-9;
/// Smallest singular value² of the subspace overlap accepted by the exact
/// reduction.
const MIN_OVERLAP: f64 = 1e-6;

fn check_subspace(dim: usize, subspace: &[usize]) -> Result<Vec<bool>> {
    let mut inside = vec![false; dim];
    for &m in subspace {
        if m >= dim || inside[m] {
            return Err(Error::InvalidParameter(format!("invalid or repeated subspace index {m}")));
        }
        inside[m] = true;
    }
    Ok(inside)
}

/// The sum term `½ Σ_l V_ml V_lm′ (1/(E_m − E_l) + 1/(E_m′ − E_l))` over
/// states `l` outside the subspace. `h0` must be diagonal.
pub fn second_order_shift(
    h0: &ComplexOperator,
    v: &ComplexOperator,
    subspace: &[usize],
) -> Result<ComplexOperator> {
    ensure_same_dim(h0, v)?;
    if !h0.is_diagonal(0.0) {
        return Err(Error::InvalidParameter("unperturbed Hamiltonian must be diagonal".into()));
    }
    v.ensure_hermitian()?;
    let inside = check_subspace(h0.dim(), subspace)?;
    let energy: Vec<f64> = h0.diagonal().iter().map(|z| z.re).collect();
    let k = subspace.len();

    let mut out = ComplexOperator::zeros(k);
    let mut smallest_gap = f64::INFINITY;
    let mut largest_coupling: f64 = 0.0;
    let mut column = vec![Complex64::new(0.0, 0.0); k];
    let mut inverse = vec![0.0; k];
    for l in (0..h0.dim()).filter(|&l| !inside[l]) {
        let mut coupled = false;
        for (a, &m) in subspace.iter().enumerate() {
            column[a] = v[(m, l)];
            if column[a].norm() > 0.0 {
                coupled = true;
                let gap = energy[m] - energy[l];
                if gap.abs() < DEGENERACY_TOL {
                    return Err(Error::DegenerateCrossing { inside: m, outside: l });
                }
                smallest_gap = smallest_gap.min(gap.abs());
                largest_coupling = largest_coupling.max(column[a].norm());
            }
            inverse[a] = 1.0 / (energy[m] - energy[l]);
        }
        if !coupled {
            continue;
        }
        for a in 0..k {
            if column[a].norm() == 0.0 {
                continue;
            }
            for b in 0..k {
                // V_lm′ = conj(V_m′l)
                let product = column[a] * column[b].conj();
                out[(a, b)] += product * (0.5 * (inverse[a] + inverse[b]));
            }
        }
    }
    if smallest_gap < 10.0 * largest_coupling {
        log::warn!(
            "subspace gap {smallest_gap:.3e} is below ten times the largest coupling {largest_coupling:.3e}"
        );
    }
    Ok(out)
}

/// Second-order effective Hamiltonian `P(H₀ + V)P + shift` on the subspace.
pub fn schrieffer_wolff2(
    h0: &ComplexOperator,
    v: &ComplexOperator,
    subspace: &[usize],
) -> Result<ComplexOperator> {
    let shift = second_order_shift(h0, v, subspace)?;
    Ok(&(h0 + v).restrict(subspace) + &shift)
}

/// Splits `h` into its diagonal and off-diagonal parts.
pub fn split_diagonal(h: &ComplexOperator) -> (ComplexOperator, ComplexOperator) {
    let d = ComplexOperator::from_diagonal(&h.diagonal());
    let off = h - &d;
    (d, off)
}

/// Indices reachable from the subspace through nonzero matrix elements.
pub fn connected_block(h: &ComplexOperator, subspace: &[usize]) -> Vec<usize> {
    let n = h.dim();
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &m in subspace {
        if !seen[m] {
            seen[m] = true;
            queue.push_back(m);
        }
    }
    while let Some(i) = queue.pop_front() {
        for (j, z) in h.row(i).iter().enumerate() {
            if !seen[j] && z.norm() > 0.0 {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    (0..n).filter(|&i| seen[i]).collect()
}

/// Exact effective Hamiltonian on the subspace: picks the eigenvectors with
/// the largest weight on the subspace and maps them back through the polar
/// (closest-unitary) factor of their subspace components. Agrees with
/// Schrieffer-Wolff order by order.
pub fn exact_effective(h: &ComplexOperator, subspace: &[usize]) -> Result<ComplexOperator> {
    h.ensure_hermitian()?;
    check_subspace(h.dim(), subspace)?;
    let block = connected_block(h, subspace);
    let position: Vec<usize> = subspace
        .iter()
        .map(|m| block.binary_search(m).expect("subspace lies inside its own block"))
        .collect();
    let reduced = h.restrict(&block);
    let e = eigh(&reduced)?;
    let k = subspace.len();

    let weight = |col: usize| -> f64 { position.iter().map(|&r| e.vectors[(r, col)].norm_sqr()).sum() };
    let mut order: Vec<usize> = (0..block.len()).collect();
    let weights: Vec<f64> = order.iter().map(|&c| weight(c)).collect();
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
    let chosen = &order[..k];

    // B: subspace rows of the chosen eigenvectors
    let b = ComplexOperator::from_fn(k, |i, j| e.vectors[(position[i], chosen[j])]);
    let overlap = b.adjoint().matmul(&b);
    let oe = eigh(&overlap)?;
    if oe.values[0] < MIN_OVERLAP {
        return Err(Error::SubspaceDisconnected);
    }
    let inv_sqrt = oe.map_values(|x| Complex64::new(1.0 / x.sqrt(), 0.0));
    let omega = b.matmul(&inv_sqrt);
    let energies: Vec<f64> = chosen.iter().map(|&c| e.values[c]).collect();
    let d = ComplexOperator::from_real_diagonal(&energies);
    let heff = omega.matmul(&d).matmul(&omega.adjoint());
    // symmetrize away rounding
    Ok((&heff + &heff.adjoint()).scale_real(0.5))
}
