//! One function per subcommand. Each returns the CSV table, the JSON result
//! and an optional numerical failure; outputs are written either way.

use qtopo_core::gelfand::{
    circle_radius_error, clock_pair, fuzzy_torus, gelfand_transform_check, joint_spectrum, random_commuting_family, CommutingFamily,
    Polynomial, CHARACTER_TOL, DEFAULT_COMMUTATION_TOL,
};
use qtopo_core::geometry::chart::{Chart, ChartPoint};
use qtopo_core::geometry::operators::{commutator_depth_residuals, DiscretizedOperator, LipschitzFunction};
use qtopo_core::geometry::roughening::{profile, roughening_truncation};
use qtopo_core::geometry::weyl::{lambda_max_for_modes, weyl_dimension_from_values};
use qtopo_core::geometry::{connes_distance_dirac, connes_distance_laplace, log_log_slope};
use qtopo_core::linalg::CMat;
use qtopo_core::pw::{
    born_oppenheimer_potential, build_basis, coherent_packet, evolve, tilt_potential, BallRule, EulerRule, Hamiltonian, Method,
    SparseMatrix, TopologyCenters,
};
use qtopo_core::spectrum::{analytic_spectrum, expanded_discrepancy, solve_spectrum_numeric};
use qtopo_core::topology::{classify as classify_u, classify_with_smoothness, Endpoint, DEFAULT_TOL};
use qtopo_core::{Unitary2, C64};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{
    ClassifyConfig, DepthConfig, DistanceConfig, EvolveConfig, FuzzyConfig, JointConfig, RoughConfig, SpectrumConfig, WeylConfig,
};
use crate::error::CliError;
use crate::io::{f, Csv};
use crate::parse::{parse_angle, parse_u};

pub struct Outcome {
    pub csv: Csv,
    pub result: Value,
    pub summary: String,
    pub failure: Option<String>,
    /// Further text outputs as `(extension, contents)`.
    pub extra: Vec<(&'static str, String)>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize to JSON")
}

fn chart_of(u: &Unitary2) -> Result<Chart, CliError> {
    Ok(Chart::from_report(&classify_u(u, DEFAULT_TOL, 8, 1)?)?)
}

pub fn spectrum(c: &SpectrumConfig) -> Result<Outcome, CliError> {
    let u = parse_u(&c.u)?;
    let analytic = analytic_spectrum(&u, c.lambda_max)?;
    let secular = solve_spectrum_numeric(&u, c.lambda_max)?;
    let disc = expanded_discrepancy(&analytic.expanded(), &secular.expanded());
    let mut csv = Csv::new(&["lambda", "k", "branch", "n", "multiplicity", "residual", "lambda_secular"]);
    let sec = secular.expanded();
    let mut offset = 0;
    for r in &analytic.rows {
        let other = sec.get(offset).copied().unwrap_or(f64::NAN);
        offset += r.multiplicity;
        csv.row(vec![f(r.lambda), f(r.k), r.branch.to_string(), r.n.to_string(), r.multiplicity.to_string(), f(r.residual), f(other)]);
    }
    let failure = match disc {
        None => Some(format!(
            "solvers disagree on the number of eigenvalues: {} vs {}",
            analytic.total_multiplicity(),
            secular.total_multiplicity()
        )),
        Some(d) if !(d <= c.tol) => Some(format!("solvers disagree by {d:.3e} > {:.1e}", c.tol)),
        Some(_) => None,
    };
    let summary = format!(
        "{} eigenvalues (with multiplicity) up to {}; solver discrepancy {}",
        analytic.total_multiplicity(),
        c.lambda_max,
        disc.map_or("n/a".into(), |d| format!("{d:.3e}"))
    );
    Ok(Outcome { csv, result: json!({ "analytic": analytic, "secular": secular, "discrepancy": disc }), summary, failure, extra: vec![] })
}

pub fn classify(c: &ClassifyConfig) -> Result<Outcome, CliError> {
    let u = parse_u(&c.u)?;
    let r = classify_with_smoothness(&u, c.tol, c.probes, c.seed, c.k_max)?;
    let mut csv = Csv::new(&["endpoint_a", "endpoint_b", "residual", "glued"]);
    for i in 0..4 {
        for j in i + 1..4 {
            let (a, b) = (Endpoint::ALL[i], Endpoint::ALL[j]);
            let glued = r.gluings.iter().any(|g| (g.a == a && g.b == b) || (g.a == b && g.b == a));
            csv.row(vec![a.label(), b.label(), f(r.residuals[i][j]), glued.to_string()]);
        }
    }
    let failure = r.ambiguous.then(|| format!("separation factor {:.3e} below threshold", r.separation));
    let summary = format!("{:?} (separation {:.3e}, smoothness {:?})", r.class, r.separation, r.smoothness);
    let extra = vec![("dot", r.to_dot())];
    Ok(Outcome { csv, result: to_value(&r), summary, failure, extra })
}

pub fn weyl(c: &WeylConfig) -> Result<Outcome, CliError> {
    let u = parse_u(&c.u)?;
    if c.modes == 0 {
        return Err(CliError::Input("modes must be positive".into()));
    }
    let table = analytic_spectrum(&u, lambda_max_for_modes(c.modes))?;
    let mut values = table.expanded();
    values.truncate(c.modes);
    let fit = weyl_dimension_from_values(&values, c.order, c.n_min)?;
    let mut csv = Csv::new(&["n", "lambda", "fit_residual"]);
    for (n, l, r) in &fit.points {
        csv.row(vec![n.to_string(), f(*l), f(*r)]);
    }
    let summary = format!("d = {:.6} (slope {:.6}, r² {:.8}) from {} eigenvalues", fit.d, fit.slope, fit.r2, values.len());
    Ok(Outcome { csv, result: to_value(&fit), summary, failure: None, extra: vec![] })
}

pub fn distance(c: &DistanceConfig) -> Result<Outcome, CliError> {
    let u = parse_u(&c.u)?;
    let chart = chart_of(&u)?;
    let x = ChartPoint::new(c.x_interval, parse_angle(&c.x)?)?;
    let y = ChartPoint::new(c.y_interval, parse_angle(&c.y)?)?;
    let orders: Vec<u32> = match c.order.as_str() {
        "1" => vec![1],
        "2" => vec![2],
        "both" => vec![1, 2],
        o => return Err(CliError::Input(format!("order must be 1, 2 or both, got {o:?}"))),
    };
    let mut csv = Csv::new(&["order", "points", "geodesic", "operator_route", "relative_error"]);
    let mut reports = Vec::new();
    let mut failure = None;
    for n in orders {
        let r = if n == 1 { connes_distance_dirac(chart, x, y, c.points)? } else { connes_distance_laplace(chart, x, y, c.points)? };
        let opt = |v: Option<f64>| v.map_or("inf".to_string(), f);
        csv.row(vec![n.to_string(), c.points.to_string(), opt(r.geodesic.finite()), opt(r.operator_route), r.relative_error.map_or("nan".into(), f)]);
        if let Some(e) = r.relative_error {
            if !(e <= c.tol) {
                failure = Some(format!("order {n}: grid route off the geodesic by {e:.3e} > {}", c.tol));
            }
        }
        reports.push(r);
    }
    let summary = reports
        .iter()
        .map(|r| {
            format!(
                "N={}: geodesic {} operator {}",
                r.order_n,
                r.geodesic.finite().map_or("inf".into(), |d| format!("{d:.6}")),
                r.operator_route.map_or("inf".into(), |d| format!("{d:.6}"))
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    Ok(Outcome { csv, result: to_value(&reports), summary, failure, extra: vec![] })
}

#[derive(Serialize)]
struct DepthResult {
    chart: Chart,
    order: u32,
    grids: Vec<usize>,
    spacings: Vec<f64>,
    /// `residuals[g][κ−1]` for grid `g` and depth `κ`.
    residuals: Vec<Vec<f64>>,
    /// Slope of `ln residual` against `ln Δx` per depth.
    slopes: Vec<f64>,
}

pub fn depth(c: &DepthConfig) -> Result<Outcome, CliError> {
    let u = parse_u(&c.u)?;
    let chart = chart_of(&u)?;
    if c.grids.len() < 2 {
        return Err(CliError::Input("need at least two grids".into()));
    }
    let mut spacings = Vec::new();
    let mut residuals = Vec::new();
    for &p in &c.grids {
        let op = match c.order {
            1 => DiscretizedOperator::momentum(chart, p)?,
            2 => DiscretizedOperator::laplacian(chart, p)?,
            o => return Err(CliError::Input(format!("order must be 1 or 2, got {o}"))),
        };
        let fx = LipschitzFunction::on_grid(&op.grid, |q| q.x.sin());
        residuals.push(commutator_depth_residuals(&op, &[fx], c.depth)?);
        spacings.push(op.grid.h);
    }
    let slopes: Vec<f64> = (0..c.depth)
        .map(|k| log_log_slope(&spacings, &residuals.iter().map(|r| r[k]).collect::<Vec<_>>()))
        .collect();
    let mut header = vec!["points".to_string(), "dx".to_string()];
    header.extend((1..=c.depth).map(|k| format!("depth_{k}")));
    let mut csv = Csv::with_header(header);
    for ((p, h), r) in c.grids.iter().zip(&spacings).zip(&residuals) {
        let mut row = vec![p.to_string(), f(*h)];
        row.extend(r.iter().map(|x| f(*x)));
        csv.row(row);
    }
    let summary = format!("slopes in Δx by depth: {}", slopes.iter().map(|s| format!("{s:.4}")).collect::<Vec<_>>().join(", "));
    let result = DepthResult { chart, order: c.order, grids: c.grids.clone(), spacings, residuals, slopes };
    Ok(Outcome { csv, result: to_value(&result), summary, failure: None, extra: vec![] })
}

pub fn rough(c: &RoughConfig) -> Result<Outcome, CliError> {
    let rate = c.rate;
    if !(rate > 0.0) {
        return Err(CliError::Input("rate must be positive".into()));
    }
    let (w, b) = match c.profile.as_str() {
        "exp" => profile(c.modes, |w| (-rate * w).exp()),
        "power" => profile(c.modes, |w| w.powf(-rate)),
        p => return Err(CliError::Input(format!("profile must be exp or power, got {p:?}"))),
    };
    let r = roughening_truncation(&w, &b, c.k_max)?;
    let mut csv = Csv::new(&["k", "head", "tail", "ratio", "pass"]);
    for row in &r.rows {
        csv.row(vec![row.k.to_string(), f(row.head), f(row.tail), f(row.ratio), row.pass.to_string()]);
    }
    let summary = match r.largest_passing {
        Some(k) if r.all_pass => format!("all orders up to {k} converge"),
        Some(k) => format!("converges up to order {k}"),
        None => "order 0 already fails".into(),
    };
    Ok(Outcome { csv, result: to_value(&r), summary, failure: None, extra: vec![] })
}

fn parse_method(s: &str) -> Result<Method, CliError> {
    match s {
        "auto" => Ok(Method::Auto),
        "dense" => Ok(Method::Dense),
        "chebyshev" => Ok(Method::Chebyshev),
        m => Err(CliError::Input(format!("method must be auto, dense or chebyshev, got {m:?}"))),
    }
}

/// Norm drift beyond which an evolution run is reported as failed.
pub const NORM_DRIFT_LIMIT: f64 = 1e-8;
/// Deviation of `P_a + P_b + P_other` from 1 beyond which a run is failed.
pub const PARTITION_LIMIT: f64 = 1e-6;

pub fn evolve_cmd(c: &EvolveConfig) -> Result<Outcome, CliError> {
    let basis = build_basis(c.p_max, c.two_j_max)?;
    let start = parse_u(&c.start)?;
    let method = parse_method(&c.method)?;
    if c.steps == 0 || !(c.t_max >= 0.0) {
        return Err(CliError::Input("need steps ≥ 1 and t_max ≥ 0".into()));
    }
    let state = coherent_packet(&start, c.tau, &basis)?;
    let mut entries = Vec::new();
    match c.potential.as_str() {
        "none" => {}
        "tilt" => entries.extend(tilt_potential(&basis, &parse_u(&c.tilt_center)?, c.v).entries),
        p => return Err(CliError::Input(format!("potential must be none or tilt, got {p:?}"))),
    }
    if c.bo_level >= 0 {
        entries.extend(born_oppenheimer_potential(&basis, c.bo_level as usize, &EulerRule::for_basis(&basis)).entries);
    }
    let potential = (c.potential != "none" || c.bo_level >= 0).then(|| SparseMatrix { dim: basis.dim(), entries });
    let h = Hamiltonian::new(&basis, c.inertia, potential)?;
    let times: Vec<f64> = (0..=c.steps).map(|k| c.t_max * k as f64 / c.steps as f64).collect();
    let trace = evolve(&state, &basis, &h, &times, &TopologyCenters::default(), c.delta, &BallRule::for_basis(&basis), method)?;
    let mut csv = Csv::new(&["t", "norm", "energy", "P_a", "P_b", "P_other", "Re_tr_u", "Im_tr_u"]);
    for r in &trace.rows {
        csv.row(vec![f(r.t), f(r.norm), f(r.energy), f(r.p_a), f(r.p_b), f(r.p_other), f(r.tr_u.re), f(r.tr_u.im)]);
    }
    let (nd, pe) = (trace.max_norm_drift(), trace.max_partition_error());
    let failure = if !(nd <= NORM_DRIFT_LIMIT) {
        Some(format!("norm drift {nd:.3e}"))
    } else if !(pe <= PARTITION_LIMIT) {
        Some(format!("P_a + P_b + P_other deviates from 1 by {pe:.3e}"))
    } else {
        None
    };
    let last = trace.rows.last().expect("at least one time");
    let summary = format!(
        "dim {}, boundary weight {:.3e}{}; at t = {}: P_a {:.4}, P_b {:.4}; norm drift {:.2e}, energy drift {:.2e}",
        basis.dim(),
        state.boundary_weight,
        if state.truncation_warning { " (truncation warning)" } else { "" },
        last.t,
        last.p_a,
        last.p_b,
        nd,
        trace.max_energy_drift()
    );
    let result = json!({
        "dim": basis.dim(),
        "boundary_weight": state.boundary_weight,
        "truncation_warning": state.truncation_warning,
        "max_norm_drift": nd,
        "max_energy_drift": trace.max_energy_drift(),
        "max_partition_error": pe,
        "trace": trace,
    });
    Ok(Outcome { csv, result, summary, failure, extra: vec![] })
}

fn diagonal_family(values: &[f64]) -> Result<CommutingFamily, CliError> {
    if values.is_empty() {
        return Err(CliError::Input("diagonal family needs values".into()));
    }
    let n = values.len();
    let m = CMat::from_fn(n, n, |i, j| if i == j { C64::new(values[i], 0.0) } else { C64::new(0.0, 0.0) });
    Ok(CommutingFamily::new(vec![m], DEFAULT_COMMUTATION_TOL)?)
}

pub fn joint(c: &JointConfig) -> Result<Outcome, CliError> {
    let fam = match c.family.as_str() {
        "clock" => clock_pair(c.k)?,
        "diagonal" => diagonal_family(&c.values)?,
        "random" => random_commuting_family(c.members, c.k, c.distinct, &mut qtopo_core::rng(c.seed))?,
        o => return Err(CliError::Input(format!("family must be clock, diagonal or random, got {o:?}"))),
    };
    let set = joint_spectrum(&fam)?;
    let mut header = vec!["multiplicity".to_string(), "residual".to_string()];
    header.extend((1..=fam.len()).map(|i| format!("x_{i}")));
    let mut csv = Csv::with_header(header);
    for ch in &set.points {
        let mut row = vec![ch.multiplicity.to_string(), f(ch.residual)];
        row.extend(ch.point.iter().map(|x| f(*x)));
        csv.row(row);
    }
    let radius_error = (c.family == "clock").then(|| circle_radius_error(&set));
    let transform = if c.family == "random" {
        let mut rng = qtopo_core::rng(c.seed.wrapping_add(1));
        let polys: Vec<Polynomial> = (0..5).map(|_| Polynomial::random(fam.len(), 4, &mut rng)).collect();
        Some(gelfand_transform_check(&fam, &polys, c.seed)?)
    } else {
        None
    };
    let mut failure = None;
    if !(set.max_residual() <= CHARACTER_TOL * fam.scale().max(1.0)) {
        failure = Some(format!("character residual {:.3e}", set.max_residual()));
    }
    if let Some(t) = transform.filter(|t| !(*t <= CHARACTER_TOL)) {
        failure = Some(format!("transform residual {t:.3e}"));
    }
    let summary = format!(
        "{} characters, total multiplicity {}{}",
        set.points.len(),
        set.total_multiplicity(),
        radius_error.map_or(String::new(), |e| format!(", radius error {e:.3e}"))
    );
    Ok(Outcome { csv, result: json!({ "characters": set, "radius_error": radius_error, "transform_residual": transform }), summary, failure, extra: vec![] })
}

pub fn fuzzy(c: &FuzzyConfig) -> Result<Outcome, CliError> {
    let r = fuzzy_torus(c.k)?.report();
    let mut csv =
        Csv::new(&["k", "relation_exact", "unitary_exact", "omega_order_exact", "relation_residual", "unitarity_residual", "commutator_norm"]);
    csv.row(vec![
        r.k.to_string(),
        r.relation_exact.to_string(),
        r.unitary_exact.to_string(),
        r.omega_order_exact.to_string(),
        f(r.relation_residual),
        f(r.unitarity_residual),
        f(r.commutator_norm),
    ]);
    let failure = (!(r.relation_exact && r.unitary_exact && r.omega_order_exact)).then(|| "exact relations do not hold".to_string());
    let summary = format!("K = {}: relation exact {}, ‖[U1, U2]‖ = {:.6}", r.k, r.relation_exact, r.commutator_norm);
    Ok(Outcome { csv, result: to_value(&r), summary, failure, extra: vec![] })
}
