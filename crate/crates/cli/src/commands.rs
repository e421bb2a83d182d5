use stc_core::dynamics::{fidelity_map, leakage_trace, SweepAxis};
use stc_core::effective::{gamma_parallel, gamma_perp, j_of_phi};
use stc_core::hubbard::{
    exchange_couplings, numerical_cross_coupling, sw_verify, CouplingVariant, HubbardParams, Lead,
    Reduction,
};
use stc_core::linalg::eigh;
use stc_core::spin::{build_h_spin, SPIN_DIM};

use crate::config::{AxisName, AxisSpec, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Rendered, Table};

const DEVICE_AXES: [AxisName; 5] =
    [AxisName::PhiSo, AxisName::Theta, AxisName::DeltaH, AxisName::HBar, AxisName::JosephsonPhase];

/// Cartesian product of the axis values, first axis slowest.
fn grid(axes: &[AxisSpec]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        let values = axis.values();
        acc.iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

fn device_sweep(config: &RunConfig) -> Result<Vec<SweepAxis>, CliError> {
    config.only_axes(&DEVICE_AXES)?;
    Ok(config.sweep.iter().filter_map(AxisSpec::device_sweep).collect())
}

fn axis_header(config: &RunConfig) -> Vec<String> {
    config.sweep.iter().map(|a| a.name.as_str().to_string()).collect()
}

/// `J₁`, `J₂` and the cross coupling for every closed form.
pub fn couplings(config: &RunConfig) -> Result<Rendered, CliError> {
    let p = config.hubbard()?;
    let mut table = Table::new(["variant", "j1", "j2", "jsc"]);
    for variant in CouplingVariant::ALL {
        let c = exchange_couplings(p, variant)?;
        table.push(vec![Cell::Text(variant.name().into()), c.j1.into(), c.j2.into(), c.jsc.into()]);
    }
    p.validate()?;
    Ok(table.into())
}

/// Anisotropy functions over a (rotation angle, θ) grid.
pub fn gammas(config: &RunConfig) -> Result<Rendered, CliError> {
    config.only_axes(&[AxisName::RotationAngle, AxisName::Theta])?;
    config.require_axis(AxisName::RotationAngle)?;
    config.require_axis(AxisName::Theta)?;
    let phi_index = config.sweep.iter().position(|a| a.name == AxisName::RotationAngle).unwrap_or(0);
    let mut table = Table::new(["phi", "theta", "gamma_par", "gamma_perp_re", "gamma_perp_im"]);
    for point in grid(&config.sweep) {
        let (phi, theta) = (point[phi_index], point[1 - phi_index]);
        let perp = gamma_perp(phi, theta);
        table.push(vec![
            phi.into(),
            theta.into(),
            gamma_parallel(phi, theta).into(),
            perp.re.into(),
            perp.im.into(),
        ]);
    }
    Ok(table.into())
}

/// The 16 eigenvalues of the spin model at each grid point.
pub fn spectrum(config: &RunConfig) -> Result<Rendered, CliError> {
    let base = config.spin()?;
    let axes = device_sweep(config)?;
    let mut header = axis_header(config);
    header.extend((0..SPIN_DIM).map(|k| format!("e{k}")));
    let mut table = Table::new(header);
    for point in grid(&config.sweep) {
        let device = axes.iter().zip(&point).fold(*base, |d, (a, &v)| a.axis.apply(&d, v));
        device.validate()?;
        let values = eigh(&build_h_spin(&device.spin_params()))?.values;
        table.push(point.iter().chain(&values).map(|&x| Cell::Num(x)).collect());
    }
    Ok(table.into())
}

/// Leakage out of the computational subspace along a time axis.
pub fn leakage(config: &RunConfig) -> Result<Rendered, CliError> {
    let device = config.spin()?;
    config.only_axes(&[AxisName::TimeNs])?;
    let times = config.require_axis(AxisName::TimeNs)?.values();
    device.validate()?;
    let trace = leakage_trace(&device.spin_params(), &times, config.leakage.mode)?;
    let mut table = Table::new(["t_ns", "leakage"]);
    for (t, l) in trace.times.iter().zip(&trace.values) {
        table.push(vec![(*t).into(), (*l).into()]);
    }
    Ok(table.into())
}

/// Cross coupling against the Josephson phase: the analytic form from the
/// `spin` section and, when a `hubbard` section is present, the value read
/// off the reduced lattice model with a junction lead.
pub fn jphi(config: &RunConfig) -> Result<Rendered, CliError> {
    config.only_axes(&[AxisName::JosephsonPhase])?;
    let phases = config.require_axis(AxisName::JosephsonPhase)?.values();
    if config.spin.is_none() && config.hubbard.is_none() {
        return Err(CliError::Config("jphi needs a `spin` or `hubbard` section".into()));
    }
    let mut header = vec!["phi"];
    if config.spin.is_some() {
        header.push("j_eff");
    }
    if config.hubbard.is_some() {
        header.push("j_hubbard");
    }
    let mut table = Table::new(header);
    for phi in phases {
        let mut row = vec![Cell::Num(phi)];
        if let Some(d) = &config.spin {
            row.push(j_of_phi(d.jsc, phi).into());
        }
        if let Some(h) = &config.hubbard {
            let p = HubbardParams { lead: Lead::Junction { phi_u: phi, phi_l: 0.0 }, ..*h };
            row.push(numerical_cross_coupling(&p, Reduction::SecondOrder)?.into());
        }
        table.push(row);
    }
    Ok(table.into())
}

/// Gate infidelity and leakage over a device-parameter grid.
pub fn fidelity(config: &RunConfig, workers: Option<usize>) -> Result<Rendered, CliError> {
    let base = config.spin()?;
    let axes = device_sweep(config)?;
    let rows = fidelity_map(base, &axes, workers)?;
    let mut header = axis_header(config);
    header.extend(["t_gate_ns", "infidelity_raw", "infidelity_opt", "leakage_max", "error"].map(String::from));
    let mut table = Table::new(header);
    for row in rows {
        let mut cells: Vec<Cell> = row.coordinates.iter().map(|&x| Cell::Num(x)).collect();
        match row.report {
            Ok(r) => cells.extend([
                r.t_gate.into(),
                (1.0 - r.fidelity_raw).into(),
                r.infidelity.into(),
                r.leakage_max.into(),
                Cell::Empty,
            ]),
            Err(e) => {
                cells.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Text(e.to_string())])
            }
        }
        table.push(cells);
    }
    Ok(table.into())
}

/// Lattice-model reduction against the analytic spin model per tunneling
/// scale. Summary lines go to stderr; JSON mode emits the full report.
pub fn sw_verify_cmd(config: &RunConfig) -> Result<Rendered, CliError> {
    config.only_axes(&[])?;
    let report = sw_verify(config.hubbard()?, &config.sw_verify)?;
    let mut table = Table::new([
        "scale",
        "t1",
        "t2",
        "gamma_ca",
        "coupling_max",
        "second_order_mismatch",
        "exact_mismatch",
        "exact_relative",
    ]);
    for r in &report.rows {
        table.push(
            [
                r.scale,
                r.t1,
                r.t2,
                r.gamma_ca,
                r.coupling_max,
                r.second_order_mismatch,
                r.exact_mismatch,
                r.exact_relative,
            ]
            .map(Cell::Num)
            .to_vec(),
        );
    }
    match report.fitted_order {
        Some(order) => eprintln!("fitted order: {order:.4}"),
        None => eprintln!("fitted order: undefined (mismatch vanishes)"),
    }
    let a = &report.arbitration;
    eprintln!(
        "variant arbitration at U = {:.6e}: double_u {:.3e}, single_u {:.3e}, winner {}",
        a.coulomb,
        a.double_u_mismatch,
        a.single_u_mismatch,
        a.winner.name()
    );
    let inf = &report.infinite_coulomb;
    eprintln!(
        "infinite U: numerical {:.6e}, double_u limit {:.6e}, closed form {:.6e}",
        inf.numerical_jsc, inf.double_u_limit, inf.infinite_u_closed_form
    );
    let json = serde_json::to_value(&report).map_err(|e| CliError::Output(e.to_string()))?;
    Ok(Rendered { table, json: Some(json) })
}
