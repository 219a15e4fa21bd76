use falconer_core::geometry::{
    count_classes, thickened_pair_measure, ClassOptions, MonteCarlo, Subsample, ThickenedOptions,
};
use falconer_core::lattice::{
    build_sharpness_set, circle_lattice_points, fit_growth_exponent, grid_simplex_census, r2, r3,
    sphere_lattice_points, three_spheres_triangle_census, CensusOptions, GrowthRecord, LatticeBox,
    ThreeSpheresOptions,
};
use falconer_core::spectral::{
    decay_fit, energy_integral, frostman_check, group_energy, group_energy_similarity, mattila_integral,
    spherical_average_curve, thresholds, GroupEnergyOptions, MattilaOptions, Rational,
};
use serde_json::{json, Value};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::input::{parse_measure, read_point_set, MeasureSource};
use crate::output::{Report, Table};

pub fn dispatch(cmd: &Command) -> CliResult<Report> {
    match cmd {
        Command::Census(a) => census(a),
        Command::Growth(a) => growth(a),
        Command::Spheres(a) => spheres(a),
        Command::ThreeSpheres(a) => three_spheres(a),
        Command::Sharpness(a) => sharpness(a),
        Command::Spectral(a) => spectral(a),
        Command::Mattila(a) => mattila(a),
        Command::GroupEnergy(a) => group(a),
        Command::Frostman(a) => frostman(a),
        Command::Thresholds(a) => threshold_values(a),
        Command::Thickened(a) => thickened(a),
        Command::Validate(a) => validate(a),
        Command::Run(_) => Err(CliError::Usage("run is handled before dispatch".into())),
    }
}

fn census(a: &CensusArgs) -> CliResult<Report> {
    let relation = a.relation.into();
    if let Some(path) = &a.input {
        let loaded = read_point_set(path)?;
        let ps = match a.quantum {
            Some(q) => loaded.points.with_quantum(Some(q))?,
            None => loaded.points,
        };
        let mut opts = ClassOptions {
            include_degenerate: a.include_degenerate,
            subsample: a.samples.map(|samples| Subsample { samples, seed: a.seed }),
            ..ClassOptions::default()
        };
        if let Some(b) = a.budget {
            opts.budget = b;
        }
        let counted = count_classes(&ps, a.k, relation, &opts)?;
        let classes = serde_json::to_value(counted.entries()).expect("class entries serialize");
        let payload = json!({
            "count": counted.count(),
            "k": a.k,
            "relation": a.relation,
            "points": ps.len(),
            "subsets_examined": counted.subsets_examined,
            "degenerate_skipped": counted.degenerate_skipped,
            "sampled": counted.sampled,
        });
        let mut report = Report::new("census", a, payload);
        report.documents.push(("classes.json".into(), classes));
        report.warnings = loaded.warnings;
        return Ok(report);
    }
    let q = a
        .q
        .ok_or_else(|| CliError::bad_input("census needs --q (lattice box) or --input (point set)"))?;
    let mut opts = CensusOptions::default();
    if let Some(b) = a.budget {
        opts.budget = b;
    }
    let count = grid_simplex_census(LatticeBox::new(a.d, q)?, a.k, relation, &opts)?;
    let payload = json!({"count": count, "d": a.d, "k": a.k, "q": q, "relation": a.relation});
    Ok(Report::new("census", a, payload))
}

fn growth(a: &GrowthArgs) -> CliResult<Report> {
    let mut opts = CensusOptions::default();
    if let Some(b) = a.budget {
        opts.budget = b;
    }
    let mut record = GrowthRecord::default();
    let mut table = Table::new("growth.csv", &["q", "count"]).comment(format!(
        "census d={} k={} relation={:?}",
        a.d, a.k, a.relation
    ));
    for &q in &a.q {
        let count = grid_simplex_census(LatticeBox::new(a.d, q)?, a.k, a.relation.into(), &opts)?;
        record.push(q, count)?;
        table.push(&[q, count]);
    }
    let fit = fit_growth_exponent(&record)?;
    let payload = json!({
        "entries": record.entries.iter().map(|&(q, c)| json!({"q": q, "count": c})).collect::<Vec<_>>(),
        "beta": fit.beta,
        "log_constant": fit.log_constant,
        "residual": fit.residual,
    });
    let mut report = Report::new("growth", a, payload);
    report.tables.push(table);
    Ok(report)
}

fn spheres(a: &SpheresArgs) -> CliResult<Report> {
    let points: Vec<Vec<i64>> = match a.d {
        2 => circle_lattice_points(a.n).into_iter().map(|(x, y)| vec![x, y]).collect(),
        3 => sphere_lattice_points(a.n).into_iter().map(|p| p.to_vec()).collect(),
        d => return Err(CliError::bad_input(format!("spheres supports d = 2 or 3, got {d}"))),
    };
    let payload = json!({"d": a.d, "n": a.n, "count": points.len(), "points": points});
    let mut report = Report::new("spheres", a, payload);
    if a.upto {
        let count = if a.d == 2 { r2 } else { r3 };
        let mut t = Table::new("counts.csv", &["n", "count"]).comment(format!("lattice points, d={}", a.d));
        for n in 0..=a.n {
            t.push(&[n, count(n) as u64]);
        }
        report.tables.push(t);
    }
    Ok(report)
}

fn three_spheres(a: &ThreeSpheresArgs) -> CliResult<Report> {
    let [n1, n2, n3] = <[u64; 3]>::try_from(a.radii.as_slice())
        .map_err(|_| CliError::bad_input(format!("--radii needs three values, got {}", a.radii.len())))?;
    let opts = ThreeSpheresOptions {
        require_distinct: !a.allow_repeats,
        require_nondegenerate: !a.allow_degenerate,
    };
    let c = three_spheres_triangle_census(n1, n2, n3, opts)?;
    Ok(Report::new("three-spheres", a, serde_json::to_value(c).expect("census serializes")))
}

fn sharpness(a: &SharpnessArgs) -> CliResult<Report> {
    let set = build_sharpness_set(a.d, a.s, a.q)?;
    let payload = serde_json::to_value(set.summary()).expect("summary serializes");
    let cols: Vec<String> = (0..a.d).map(|i| format!("x{i}")).collect();
    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut t = Table::new("centers.csv", &cols).comment(format!("dim={} mode=float", a.d));
    for i in 0..set.centers.len() {
        t.push(&set.centers.point_f64(i));
    }
    let mut report = Report::new("sharpness", a, payload);
    report.tables.push(t);
    Ok(report)
}

fn load_measure(m: &MeasureArgs, warnings: &mut Vec<String>) -> CliResult<MeasureSource> {
    let spec = match (&m.measure, &m.input) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => format!("file:{}", p.display()),
        (None, None) => return Err(CliError::bad_input("need --measure or --input")),
    };
    parse_measure(&spec, m.d, warnings)
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> CliResult<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(CliError::bad_input(format!(
            "need 0 < tmin < tmax and at least 2 points, got [{lo}, {hi}] with {n}"
        )));
    }
    let ratio = (hi / lo).ln() / (n - 1) as f64;
    Ok((0..n).map(|i| lo * (ratio * i as f64).exp()).collect())
}

fn spectral(a: &SpectralArgs) -> CliResult<Report> {
    let mut warnings = Vec::new();
    let m = load_measure(&a.measure, &mut warnings)?;
    let ts = log_spaced(a.tmin, a.tmax, a.points)?;
    let curve = spherical_average_curve(m.fourier(), &ts, a.nodes)?;
    let mut payload = json!({
        "dim": m.fourier().dim(),
        "nodes": curve.nodes,
        "curve": curve.points.iter().map(|&(t, s)| json!({"t": t, "sigma": s})).collect::<Vec<_>>(),
    });
    if let Some(s) = a.s {
        let fit = decay_fit(&curve, s, m.fourier().dim())?;
        payload["fit"] = serde_json::to_value(fit).expect("fit serializes");
        if let MeasureSource::Atoms(atoms) = &m {
            payload["energy"] = serde_json::to_value(energy_integral(atoms, s)?).expect("energy serializes");
        }
    }
    let mut t = Table::new("curve.csv", &["t", "sigma"]).comment(format!("spherical average, nodes={}", a.nodes));
    for &(x, y) in &curve.points {
        t.push(&[x, y]);
    }
    let mut report = Report::new("spectral", a, payload);
    report.tables.push(t);
    report.warnings = warnings;
    Ok(report)
}

fn mattila(a: &MattilaArgs) -> CliResult<Report> {
    let mut warnings = Vec::new();
    let m = load_measure(&a.measure, &mut warnings)?;
    let opts = MattilaOptions {
        nodes: a.nodes,
        order: a.order,
        panel_width: None,
        budget: a.budget,
    };
    let value = mattila_integral(m.fourier(), a.tmin, a.tmax, &opts)?;
    let mut report = Report::new("mattila", a, json!({"value": value, "tmin": a.tmin, "tmax": a.tmax}));
    report.warnings = warnings;
    Ok(report)
}

fn group(a: &GroupEnergyArgs) -> CliResult<Report> {
    let mut warnings = Vec::new();
    let source = load_measure(&a.measure, &mut warnings)?;
    let m = source.atoms("group-energy")?;
    if a.grid_res == 0 {
        return Err(CliError::bad_input("--grid-res must be positive"));
    }
    let opts = GroupEnergyOptions {
        h: 1.0 / a.grid_res as f64,
        samples: a.samples,
        seed: a.seed,
        supersample: a.supersample,
        cell_budget: a.budget,
    };
    let est = match &a.scales {
        Some(r) => group_energy_similarity(m, a.k, (r[0], r[1]), &opts)?,
        None => group_energy(m, a.k, &opts)?,
    };
    let mut report = Report::new("group-energy", a, serde_json::to_value(est).expect("estimate serializes"));
    report.warnings = warnings;
    Ok(report)
}

fn frostman(a: &FrostmanArgs) -> CliResult<Report> {
    let mut warnings = Vec::new();
    let source = load_measure(&a.measure, &mut warnings)?;
    let table = frostman_check(source.atoms("frostman")?, &a.radii)?;
    let mut t = Table::new("frostman.csv", &["radius", "max_mass"]);
    for r in &table.rows {
        t.push(&[r.radius, r.max_mass]);
    }
    let mut report = Report::new("frostman", a, serde_json::to_value(table).expect("table serializes"));
    report.tables.push(t);
    report.warnings = warnings;
    Ok(report)
}

fn rational(r: Rational) -> Value {
    json!(format!("{}/{}", r.numer(), r.denom()))
}

fn threshold_values(a: &ThresholdsArgs) -> CliResult<Report> {
    let t = thresholds(a.k, a.d)?;
    let f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
    let mut payload = json!({
        "k": a.k,
        "d": a.d,
        "t": f(t.t_kd),
        "s": f(t.s_kd),
        "lower": f(t.lower_bound),
        "exact": {"t": rational(t.t_kd), "s": rational(t.s_kd), "lower": rational(t.lower_bound)},
    });
    if let Some(p) = t.planar_special {
        payload["planar_special"] = json!(f(p));
        payload["exact"]["planar_special"] = rational(p);
    }
    Ok(Report::new("thresholds", a, payload))
}

fn thickened(a: &ThickenedArgs) -> CliResult<Report> {
    let loaded = read_point_set(&a.input)?;
    let ps = if loaded.points.weights().is_none() {
        loaded.points.with_uniform_weights()?
    } else {
        loaded.points
    };
    let mut opts = ThickenedOptions {
        monte_carlo: a.samples.map(|samples| MonteCarlo { samples, seed: a.seed }),
        ..ThickenedOptions::default()
    };
    if let Some(b) = a.budget {
        opts.budget = b;
    }
    let m = thickened_pair_measure(&ps, a.k, a.epsilon, &opts)?;
    let mut report = Report::new("thickened", a, serde_json::to_value(m).expect("measure serializes"));
    report.warnings = loaded.warnings;
    Ok(report)
}

fn validate(a: &ValidateArgs) -> CliResult<Report> {
    let loaded = read_point_set(&a.input)?;
    let ps = &loaded.points;
    let payload = json!({
        "dim": ps.dim(),
        "mode": ps.mode().to_string(),
        "points": ps.len(),
        "weighted": ps.weights().is_some(),
        "quantum": ps.quantum(),
        "diameter": ps.diameter(),
        "warnings": loaded.warnings,
    });
    let mut cols: Vec<String> = (0..ps.dim()).map(|i| format!("x{i}")).collect();
    if ps.weights().is_some() {
        cols.push("weight".into());
    }
    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut t = Table::new("points.csv", &cols).comment(format!("dim={} mode={}", ps.dim(), ps.mode()));
    for i in 0..ps.len() {
        let mut row: Vec<String> = match ps.exact_point(i) {
            Some(p) => p.iter().map(|v| v.to_string()).collect(),
            None => ps.point_f64(i).iter().map(|v| v.to_string()).collect(),
        };
        if let Some(w) = ps.weights() {
            row.push(w[i].to_string());
        }
        t.push(&row);
    }
    let mut report = Report::new("validate", a, payload);
    report.tables.push(t);
    report.warnings = loaded.warnings.clone();
    Ok(report)
}
