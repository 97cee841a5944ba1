use matroid_theta::certificates::{
    excluded_minor_submatrix, hadamard_min_rank, psd_minimality_verdict, theta_rank_estimate, theta_rank_report, verify_identity_w4,
    SosOptions, DEFAULT_BUDGET,
};
use matroid_theta::enumeration::{all_classes, graph_excluded_minor_report, lev, minimally_k_level, two_level_verdicts};
use matroid_theta::geometry::{levelness, slack_matrix, PointConfig};
use matroid_theta::ideals::{generation_degree_at_most, rat, separation_degree, vanishing_ideal};
use matroid_theta::iso::is_isomorphic;
use matroid_theta::{catalog, Matroid, Result};

pub const SUITES: [&str; 4] = ["paper-props", "graphs-k-level", "psd", "ideals"];

pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, r: Result<(bool, String)>) -> Check {
    match r {
        Ok((passed, detail)) => Check { name: name.to_string(), passed, detail },
        Err(e) => Check { name: name.to_string(), passed: false, detail: format!("error: {e}") },
    }
}

fn lev_of_named() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, m) in catalog::excluded_minors() {
        let l = levelness(&m).0;
        ok &= l == 3;
        parts.push(format!("{name}={l}"));
    }
    for n in 3..=5 {
        let l = levelness(&catalog::wheel(n)).0;
        ok &= l == n;
        parts.push(format!("wheel({n})={l}"));
    }
    Ok((ok, parts.join(" ")))
}

fn small_matroids_two_level() -> Result<(bool, String)> {
    let mut count = 0;
    let mut bad = 0;
    for n in 0..=6 {
        for m in all_classes(n)? {
            if n <= 5 || m.rank() <= 2 {
                count += 1;
                if lev(&m) > 2 {
                    bad += 1;
                }
            }
        }
    }
    Ok((bad == 0, format!("{count} classes checked, {bad} not 2-level")))
}

fn four_way() -> Result<(bool, String)> {
    let mut count = 0;
    let mut disagreements = 0;
    for n in 0..=6 {
        for m in all_classes(n)? {
            count += 1;
            if !two_level_verdicts(&m)?.agree() {
                disagreements += 1;
            }
        }
    }
    let minimal = minimally_k_level(3, 6)?;
    let named = catalog::excluded_minors();
    let matches = minimal.len() == 4 && named.iter().all(|(_, e)| minimal.iter().any(|m| is_isomorphic(m, e).is_some()));
    Ok((
        disagreements == 0 && matches,
        format!("{count} classes, {disagreements} disagreements, {} minimally 3-level", minimal.len()),
    ))
}

fn theta_bounds() -> Result<(bool, String)> {
    let w4 = theta_rank_estimate(&catalog::wheel(4), 3)?;
    let w5 = theta_rank_report(&catalog::wheel(5), 3, Some(&SosOptions::default()))?;
    let k5 = theta_rank_estimate(&catalog::mk5(), 3)?;
    let k33 = theta_rank_estimate(&catalog::mk33(), 3)?;
    let ok = verify_identity_w4()
        && w4 == (2, Some(2))
        && (w5.lower, w5.upper) == (3, Some(3))
        && w5.separation_degree == Some(5)
        && k5.1 == Some(2)
        && k33.1 == Some(2);
    Ok((ok, format!("wheel(4)={w4:?} wheel(5)=({}, {:?}) MK5={k5:?} MK33={k33:?}", w5.lower, w5.upper)))
}

fn cube_minus_origin(n: usize) -> PointConfig {
    let masks: Vec<u32> = (1..1u32 << n).collect();
    PointConfig::from_masks(n, &masks)
}

fn separation_degrees() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 3..=5 {
        let s = separation_degree(&cube_minus_origin(n), &vec![rat(0); n])?;
        ok &= s == n as u32;
        parts.push(format!("n={n}: {s}"));
    }
    Ok((ok, parts.join(" ")))
}

fn graphs(k: usize) -> Result<(bool, String)> {
    let r = graph_excluded_minor_report(k)?;
    let detail = format!(
        "{} graphs, excluded minors with {:?} edges, {} mismatches{}",
        r.graphs_checked,
        r.excluded_minor_sizes,
        r.mismatches.len(),
        r.decomposition_ok.map_or(String::new(), |d| format!(", decomposition {d}"))
    );
    Ok((r.passed(), detail))
}

fn hrk_a0() -> Result<(bool, String)> {
    let a0: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(i != j)).collect()).collect();
    let out = hadamard_min_rank(&a0, None, DEFAULT_BUDGET)?;
    Ok((out.min_rank_found == 4 && out.exhaustive, format!("min rank {}, exhaustive {}", out.min_rank_found, out.exhaustive)))
}

fn hrk_submatrices() -> Result<(bool, String)> {
    let (rows, cols) = excluded_minor_submatrix();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, m) in catalog::excluded_minors() {
        let s = slack_matrix(&m)?;
        let sub: Vec<Vec<i64>> = s
            .submatrix(&rows, &cols)
            .expect("rows are bases and columns are facets")
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as i64).collect())
            .collect();
        let out = hadamard_min_rank(&sub, None, DEFAULT_BUDGET)?;
        ok &= out.min_rank_found == 7 && out.exhaustive;
        parts.push(format!("{name}={}", out.min_rank_found));
    }
    Ok((ok, parts.join(" ")))
}

fn psd_verdicts() -> Result<(bool, String)> {
    let mut ok = true;
    let mut uniform = 0;
    for n in 2..=5 {
        for k in 1..n {
            ok &= psd_minimality_verdict(&Matroid::uniform(n, k))?;
            uniform += 1;
        }
    }
    for (_, m) in catalog::excluded_minors() {
        ok &= !psd_minimality_verdict(&m)?;
    }
    Ok((ok, format!("{uniform} uniform matroids certified, 4 excluded minors refuted")))
}

fn ideal_checks() -> Result<(bool, String)> {
    // four points in the plane, not generated in degree 1
    let v = PointConfig::from_integer_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    let cube = vanishing_ideal(&v)?;
    let mut ok = cube.basis.len() == 2 && generation_degree_at_most(&v, 2)? && !generation_degree_at_most(&v, 1)?;
    for (_, m) in catalog::excluded_minors() {
        ok &= !generation_degree_at_most(&matroid_theta::geometry::base_configuration(&m), 2)?;
    }
    for (n, k) in [(4, 2), (5, 2), (5, 3)] {
        ok &= generation_degree_at_most(&matroid_theta::geometry::base_configuration(&Matroid::uniform(n, k)), 2)?;
    }
    Ok((ok, "square, excluded minors and uniform matroids".to_string()))
}

pub fn run(suite: &str) -> Option<Vec<Check>> {
    let checks = match suite {
        "paper-props" => vec![
            check("levelness of named matroids", lev_of_named()),
            check("rank <= 2 or |E| <= 5 implies 2-level", small_matroids_two_level()),
            check("four-way 2-level agreement, n <= 6", four_way()),
            check("theta bounds", theta_bounds()),
            check("separation degrees", separation_degrees()),
        ],
        "graphs-k-level" => (2..=4).map(|k| check(&format!("graphs k={k}"), graphs(k))).collect(),
        "psd" => vec![
            check("Hrk(A0) = 4", hrk_a0()),
            check("7x7 submatrices have Hrk 7", hrk_submatrices()),
            check("psd-minimality verdicts", psd_verdicts()),
        ],
        "ideals" => vec![
            check("degree-2 generation", ideal_checks()),
            check("separation degrees", separation_degrees()),
        ],
        _ => return None,
    };
    Some(checks)
}
