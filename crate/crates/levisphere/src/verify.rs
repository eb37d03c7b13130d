//! The named check suite and the artifact plumbing behind the command line.
//!
//! A check takes a configuration, builds what it needs, and returns a
//! status with the numbers it computed.  Theorem checks pass or fail;
//! probe checks only record.  Reports serialize deterministically so that
//! identical configurations hash identically, wall-clock fields aside.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::action::{
    chain_action, check_equivariance, crossed_vector_action, fixed_point_comparison,
    steinberg_les_check, vector_poset_action, MatrixGroup, MAX_GROUP_ELEMENTS,
};
use crate::building::{Building, BuildingKind};
use crate::coxeter::{parabolic_poset, y_dimension_probe};
use crate::decomp::{
    build_cb, build_d, build_od, build_opd, build_pd, build_y, crossed_k2, crossed_ok2,
    dbar_poset, lower_interval_check, map_gamma, map_phi, map_phi_vector, upper_interval_probe,
    vector_d, vector_od, vector_opd, vector_pd, wedge_bookkeeping,
};
use crate::error::Error;
use crate::gf::Mat;
use crate::homology::{cohen_macaulay, homology, induced_iso, is_spherical, CmStatus, Homology};
use crate::poset::{isomorphism, MAX_FACES, MAX_POSET_ELEMENTS};
use crate::Result;

/// Every check the suite knows, theorem checks first, probes last.
pub const CHECK_IDS: [&str; 11] = [
    "cb-pd-equiv",
    "opd-join",
    "od-cm",
    "d-cm",
    "pd-spherical",
    "vs-crossed",
    "wedge-book",
    "parabolic-iso",
    "les-steinberg",
    "y-question",
    "upper-conjecture",
];

/// Probe checks record outcomes and can never fail a run.
pub fn is_probe(id: &str) -> bool {
    matches!(id, "y-question" | "upper-conjecture")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Building spec: `A(p=2,n=3)` or `thin:A2`.
    pub building: String,
    /// Constructions for `build`: CB, Y, D, OD, PD, OPD, and for linear
    /// buildings also PD(V), OPD(V), D(V), OD(V), K2, OK2.
    pub constructions: Vec<String>,
    /// Check ids for `check` when none are given on the command line.
    pub checks: Vec<String>,
    /// Extra subgroups for the fixed-point clauses of vs-crossed.
    pub subgroups: Vec<SubgroupSpec>,
    pub budgets: Budgets,
    pub output_dir: String,
    /// Seed recorded for provenance; randomized suites live in the tests.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            building: "A(p=2,n=2)".to_string(),
            constructions: Vec::new(),
            checks: Vec::new(),
            subgroups: Vec::new(),
            budgets: Budgets::default(),
            output_dir: ".".to_string(),
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    #[serde(default)]
    pub name: String,
    pub field: u8,
    /// Generator matrices, row by row; rows act on the right.
    pub generators: Vec<Vec<Vec<u8>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    pub memory_mb: u64,
    pub faces: usize,
    pub poset_elements: usize,
    pub group_elements: usize,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets {
            memory_mb: 4096,
            faces: MAX_FACES,
            poset_elements: MAX_POSET_ELEMENTS,
            group_elements: MAX_GROUP_ELEMENTS,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = fs::read_to_string(path)?;
        let cfg: Config = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Apply the DECOMP_BUDGET_MB cap: face and element budgets shrink to
    /// coarse per-megabyte allowances, never grow.
    pub fn apply_memory_env(&mut self) -> Result<()> {
        if let Ok(s) = std::env::var("DECOMP_BUDGET_MB") {
            let mb: u64 = s
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("DECOMP_BUDGET_MB is not a number: {s:?}")))?;
            if mb == 0 {
                return Err(Error::invalid("DECOMP_BUDGET_MB must be positive"));
            }
            self.budgets.memory_mb = mb;
            self.budgets.faces = self.budgets.faces.min((mb as usize).saturating_mul(8192));
            self.budgets.poset_elements =
                self.budgets.poset_elements.min((mb as usize).saturating_mul(2048));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        parse_building(&self.building)?;
        for c in &self.checks {
            if !CHECK_IDS.contains(&c.as_str()) {
                return Err(Error::invalid(format!("unknown check id {c:?}")));
            }
        }
        for c in &self.constructions {
            construction_slug(c)?;
        }
        let b = &self.budgets;
        if b.memory_mb == 0 || b.faces == 0 || b.poset_elements == 0 || b.group_elements == 0 {
            return Err(Error::invalid("budgets must be positive"));
        }
        for s in &self.subgroups {
            if !is_prime(s.field as u64) {
                return Err(Error::invalid("subgroup field must be prime"));
            }
        }
        Ok(())
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Parse `A(p=2,n=3)` or `thin:A2` into a building.
pub fn parse_building(spec: &str) -> Result<Building> {
    let s = spec.trim();
    if let Some(name) = s.strip_prefix("thin:") {
        return Building::thin(name.trim());
    }
    let inner = s
        .strip_prefix("A(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| {
            Error::invalid(format!(
                "unrecognized building spec {s:?}: expected A(p=..,n=..) or thin:<type>"
            ))
        })?;
    let mut p: Option<u64> = None;
    let mut n: Option<u64> = None;
    for part in inner.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("expected key=value, got {part:?}")))?;
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("{} is not a number: {v:?}", k.trim())))?;
        match k.trim() {
            "p" => p = Some(v),
            "n" => n = Some(v),
            other => return Err(Error::invalid(format!("unknown field {other:?}"))),
        }
    }
    let p = p.ok_or_else(|| Error::invalid("missing field p"))?;
    let n = n.ok_or_else(|| Error::invalid("missing field n"))?;
    if !is_prime(p) {
        return Err(Error::invalid("p must be prime"));
    }
    if p > 251 {
        return Err(Error::budget("p above 251 is out of scope"));
    }
    Building::type_a(p as u8, n as usize)
}

fn linear_params(b: &Building) -> Result<(u8, usize)> {
    match &b.kind {
        BuildingKind::TypeA { p, n, .. } => Ok((*p, *n)),
        BuildingKind::Thin => {
            Err(Error::invalid("this check needs a linear building, got a thin one"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
    Probe,
}

impl Status {
    fn of(pass: bool) -> Status {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: String,
    pub building: String,
    pub status: Status,
    pub values: Value,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config_hash: String,
    /// Unix seconds; excluded from the payload hash, as are wall clocks.
    pub timestamp: u64,
    pub outcomes: Vec<CheckOutcome>,
}

impl Report {
    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Hash of everything reproducible: the report with the timestamp and
    /// per-check wall clocks zeroed.
    pub fn payload_hash(&self) -> Result<String> {
        let mut clone = self.clone();
        clone.timestamp = 0;
        for o in &mut clone.outcomes {
            o.seconds = 0.0;
        }
        Ok(sha256_hex(&serde_json::to_string(&clone)?))
    }

    /// 0 all theorem checks pass, 1 any failed, 3 any budget-limited
    /// unknown.  Probes never count.
    pub fn exit_code(&self) -> i32 {
        if self.outcomes.iter().any(|o| o.status == Status::Fail) {
            1
        } else if self.outcomes.iter().any(|o| o.status == Status::Unknown) {
            3
        } else {
            0
        }
    }
}

fn sha256_hex(text: &str) -> String {
    let mut h = Sha256::new();
    h.update(text.as_bytes());
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn config_hash(cfg: &Config) -> Result<String> {
    Ok(sha256_hex(&serde_json::to_string(cfg)?))
}

fn betti_table(h: &Homology) -> Value {
    serde_json::to_value(h.to_json()).expect("homology tables serialize")
}

/// Run one named check against a configuration.
pub fn run_check(id: &str, cfg: &Config) -> Result<CheckOutcome> {
    let t = Instant::now();
    let (status, values) = match id {
        "cb-pd-equiv" => check_cb_pd_equiv(cfg)?,
        "opd-join" => check_opd_join(cfg)?,
        "od-cm" => check_cm(cfg, true)?,
        "d-cm" => check_cm(cfg, false)?,
        "pd-spherical" => check_pd_spherical(cfg)?,
        "vs-crossed" => check_vs_crossed(cfg)?,
        "wedge-book" => check_wedge_book(cfg)?,
        "parabolic-iso" => check_parabolic_iso(cfg)?,
        "les-steinberg" => check_les_steinberg(cfg)?,
        "y-question" => check_y_question()?,
        "upper-conjecture" => check_upper_conjecture(cfg)?,
        other => return Err(Error::invalid(format!("unknown check id {other:?}"))),
    };
    Ok(CheckOutcome {
        id: id.to_string(),
        building: cfg.building.clone(),
        status,
        values,
        seconds: t.elapsed().as_secs_f64(),
    })
}

/// PD, Y, and CB have the same homology, and the comparison map through
/// convex hulls induces it.
fn check_cb_pd_equiv(cfg: &Config) -> Result<(Status, Value)> {
    let b = parse_building(&cfg.building)?;
    let pd = build_pd(&b)?;
    let y = build_y(&b)?;
    let cb = build_cb(&b)?;
    let h_pd = homology(&pd.poset.order_complex()?);
    let h_y = homology(&y.poset.order_complex()?);
    let h_cb = homology(&cb);
    let agree = h_pd.same_groups(&h_y) && h_y.same_groups(&h_cb);
    let g = map_gamma(&b, &pd, &y, None)?;
    let kx = g.chain_poset.order_complex()?;
    let ky = y.poset.order_complex()?;
    let iso = induced_iso(&kx, &ky, &g.map.map)?;
    let status = Status::of(agree && iso.all_iso);
    let values = json!({
        "pd": betti_table(&h_pd),
        "y": betti_table(&h_y),
        "cb": betti_table(&h_cb),
        "homologies_agree": agree,
        "hull_map_iso": iso.all_iso,
        "pd_elements": pd.poset.len(),
        "y_elements": y.poset.len(),
    });
    Ok((status, values))
}

/// OPD has the homology of the two-sided join model, induced by phi.
fn check_opd_join(cfg: &Config) -> Result<(Status, Value)> {
    let b = parse_building(&cfg.building)?;
    let opd = build_opd(&b)?;
    let (model, phi) = map_phi(&b, &opd)?;
    let h_opd = homology(&opd.poset.order_complex()?);
    let h_model = homology(&model.order_complex()?);
    let agree = h_opd.same_groups(&h_model);
    let iso = induced_iso(&opd.poset.order_complex()?, &model.order_complex()?, &phi.map)?;
    let status = Status::of(agree && iso.all_iso);
    let values = json!({
        "opd": betti_table(&h_opd),
        "join_model": betti_table(&h_model),
        "homologies_agree": agree,
        "phi_iso": iso.all_iso,
        "opd_elements": opd.poset.len(),
    });
    Ok((status, values))
}

/// Cohen-Macaulay of dimension dim(building) for OD (ordered) or D.
fn check_cm(cfg: &Config, ordered: bool) -> Result<(Status, Value)> {
    let b = parse_building(&cfg.building)?;
    let poset = if ordered { build_od(&b)?.poset } else { build_d(&b)?.poset };
    let k = poset.order_complex()?;
    let expected = b.dim();
    match cohen_macaulay(&k, cfg.budgets.faces) {
        CmStatus::Cm { dim } => Ok((
            Status::of(dim == expected),
            json!({"cm": true, "dim": dim, "expected_dim": expected, "elements": poset.len()}),
        )),
        CmStatus::NotCm { witness } => {
            Ok((Status::Fail, json!({"cm": false, "witness": witness})))
        }
        CmStatus::Unknown { reason } => Ok((Status::Unknown, json!({"reason": reason}))),
    }
}

/// PD is spherical of dimension 2 dim(building) + 1.
fn check_pd_spherical(cfg: &Config) -> Result<(Status, Value)> {
    let b = parse_building(&cfg.building)?;
    let pd = build_pd(&b)?;
    let k = pd.poset.order_complex()?;
    let expected = 2 * b.dim() + 1;
    let ok = is_spherical(&k, expected);
    let h = homology(&k);
    let values = json!({
        "expected_dim": expected,
        "complex_dim": k.dim(),
        "spherical": ok,
        "top_betti": h.betti(expected),
        "homology": betti_table(&h),
    });
    Ok((Status::of(ok), values))
}

/// The subgroups vs-crossed runs: the full general linear group, the
/// diagonal torus when that is nontrivial (p odd) and the basis rotation
/// otherwise, then whatever the configuration adds.
fn subgroup_roster(p: u8, n: usize, extra: &[SubgroupSpec]) -> Result<Vec<(String, MatrixGroup)>> {
    let mut roster = vec![("general-linear".to_string(), MatrixGroup::general_linear(p, n)?)];
    if p > 2 {
        roster.push(("diagonal-torus".to_string(), MatrixGroup::diagonal_torus(p, n)?));
    } else {
        let c: Vec<Vec<u8>> =
            (0..n).map(|i| (0..n).map(|j| u8::from(j == (i + 1) % n)).collect()).collect();
        let rot = MatrixGroup::from_generators(p, n, vec![Mat::from_rows(p, c)?])?;
        roster.push(("basis-rotation".to_string(), rot));
    }
    for (i, s) in extra.iter().enumerate() {
        if s.field != p {
            return Err(Error::invalid(format!(
                "subgroup {} is over GF({}), building over GF({p})",
                i, s.field
            )));
        }
        let gens = s
            .generators
            .iter()
            .map(|g| Mat::from_rows(p, g.clone()))
            .collect::<Result<Vec<Mat>>>()?;
        if gens.iter().any(|g| g.n != n) {
            return Err(Error::invalid(format!("subgroup {i} generators are not {n} by {n}")));
        }
        let name =
            if s.name.is_empty() { format!("config-subgroup-{i}") } else { s.name.clone() };
        roster.push((name, MatrixGroup::from_generators(p, n, gens)?));
    }
    Ok(roster)
}

/// The subdivision maps from the vector-space partial decomposition posets
/// to the common-basis crossed posets induce homology isomorphisms, also
/// after restricting to subgroup fixed points.
fn check_vs_crossed(cfg: &Config) -> Result<(Status, Value)> {
    let b = parse_building(&cfg.building)?;
    let (p, n) = linear_params(&b)?;
    let roster = subgroup_roster(p, n, &cfg.subgroups)?;
    let mut pass = true;
    let mut sides = Vec::new();
    for ordered in [false, true] {
        let v = if ordered { vector_opd(p, n)? } else { vector_pd(p, n)? };
        let k2 = if ordered { crossed_ok2(p, n)? } else { crossed_k2(p, n)? };
        let (cp, chains, phi) = map_phi_vector(&v, &k2)?;
        let kx = cp.order_complex_capped(cfg.budgets.faces)?;
        let ky = k2.poset.order_complex_capped(cfg.budgets.faces)?;
        let iso = induced_iso(&kx, &ky, &phi.map)?;
        pass &= iso.all_iso;
        let mut subgroup_rows = Vec::new();
        for (name, grp) in &roster {
            let v_act = vector_poset_action(&v, grp)?;
            let cp_act = chain_action(&cp, &chains, &v_act)?;
            let k_act = crossed_vector_action(&k2, grp)?;
            let equivariant = check_equivariance(&phi, &cp_act, &k_act);
            let cmp = fixed_point_comparison(&cp, &cp_act, &k2.poset, &k_act, &phi)?;
            pass &= equivariant && cmp.report.all_iso;
            subgroup_rows.push(json!({
                "subgroup": name,
                "equivariant": equivariant,
                "fixed_in_source": cmp.src_size,
                "fixed_in_target": cmp.dst_size,
                "fixed_point_iso": cmp.report.all_iso,
            }));
        }
        sides.push(json!({
            "ordered": ordered,
            "source_elements": v.poset.len(),
            "target_elements": k2.poset.len(),
            "whole_map_iso": iso.all_iso,
            "subgroups": subgroup_rows,
        }));
    }
    Ok((Status::of(pass), json!({ "field": p, "rank": n, "sides": sides })))
}

/// Wedge bookkeeping: both decomposition poset complexes match their
/// sphere-by-sphere wedge descriptions.
fn check_wedge_book(cfg: &Config) -> Result<(Status, Value)> {
    let b = parse_building(&cfg.building)?;
    match wedge_bookkeeping(&b) {
        Ok(report) => {
            let row = |side: &crate::decomp::WedgeSide| {
                json!({
                    "matches": side.matches,
                    "lhs": betti_table(&side.lhs),
                    "base": betti_table(&side.base),
                    "spheres": side.rows.len(),
                })
            };
            let ok = report.od.matches && report.opd.matches;
            Ok((Status::of(ok), json!({"od": row(&report.od), "opd": row(&report.opd)})))
        }
        Err(Error::Budget(reason)) => Ok((Status::Unknown, json!({ "reason": reason }))),
        Err(e) => Err(e),
    }
}

/// Upper intervals of the reverse sphere poset are parabolic posets; lower
/// intervals are the sphere posets of links.
fn check_parabolic_iso(cfg: &Config) -> Result<(Status, Value)> {
    let b = parse_building(&cfg.building)?;
    let upper = dbar_poset(&b.model)?;
    let pwr = parabolic_poset(&b.model.system)?;
    let upper_iso = isomorphism(&upper, &pwr).is_some();
    let d = build_d(&b)?;
    let mut lower_ok = true;
    for s in 0..d.masks.len() {
        lower_ok &= lower_interval_check(&b, &d, s)?;
    }
    let status = Status::of(upper_iso && lower_ok);
    let values = json!({
        "apartment_interval_elements": upper.len(),
        "parabolic_count": pwr.len(),
        "upper_iso": upper_iso,
        "lower_intervals_checked": d.masks.len(),
        "lower_ok": lower_ok,
    });
    Ok((status, values))
}

/// Alternating dimension sum from the Steinberg filtration, checked two
/// independent ways.
fn check_les_steinberg(cfg: &Config) -> Result<(Status, Value)> {
    let b = parse_building(&cfg.building)?;
    let (p, n) = linear_params(&b)?;
    let r = steinberg_les_check(p, n)?;
    let orbit_rows: Vec<Value> = r
        .orbit_rows
        .iter()
        .map(|o| {
            json!({
                "simplex_dim": o.simplex_dim,
                "pairs": o.size,
                "stabilizer_order": o.stabilizer_order,
                "levi_steinberg_dim": o.st_levi,
                "term": o.term,
            })
        })
        .collect();
    let skeleton_rows: Vec<Value> = r
        .skeleton_rows
        .iter()
        .map(|s| {
            json!({
                "level": s.level,
                "elements": s.elements,
                "direct_top": s.direct_top,
                "join_model_top": s.join_model_top,
                "relative": s.relative,
                "stratum_total": s.stratum_total,
                "spherical": s.spherical,
                "consistent": s.consistent,
            })
        })
        .collect();
    let status = Status::of(r.les_ok && r.skeleton_ok);
    let values = json!({
        "group_order": r.group_order,
        "steinberg_dim": r.st_dim,
        "terms": r.terms,
        "alternating_sum": r.alternating_sum,
        "skeleton_ok": r.skeleton_ok,
        "orbits": orbit_rows,
        "skeleta": skeleton_rows,
    });
    Ok((status, values))
}

/// Probe: dimension of the convexity poset against twice the complex
/// dimension plus one, across small Coxeter types.
fn check_y_question() -> Result<(Status, Value)> {
    let mut rows = Vec::new();
    for name in ["A1", "A2", "A3", "I2(3)", "I2(4)", "I2(5)", "I2(6)"] {
        let r = y_dimension_probe(name)?;
        rows.push(json!({
            "type": r.type_name,
            "complex_dim": r.sigma_dim,
            "census_size": r.census_size,
            "poset_dim": r.poset_dim,
            "two_dim_plus_one": r.double_plus_one,
            "matches": r.matches,
        }));
    }
    Ok((Status::Probe, json!({ "rows": rows })))
}

/// Probe: homology of strict upper intervals of simplices in the crossed
/// posets, against the conjectured sphere dimension.
fn check_upper_conjecture(cfg: &Config) -> Result<(Status, Value)> {
    let b = parse_building(&cfg.building)?;
    let rows: Vec<Value> = upper_interval_probe(&b)?
        .iter()
        .map(|r| {
            json!({
                "family": r.family,
                "simplex_dim": r.simplex_dim,
                "conjectured_dim": r.conjectured_dim,
                "interval_size": r.interval_size,
                "betti": r.betti,
                "torsion_free": r.torsion_free,
                "spherical": r.spherical,
                "count": r.count,
            })
        })
        .collect();
    Ok((Status::Probe, json!({ "rows": rows })))
}

/// Sanitized file stem for a building spec.
fn building_slug(spec: &str) -> String {
    let mut out = String::new();
    for c in spec.trim().chars() {
        match c {
            'a'..='z' | 'A'..='Z' | '0'..='9' => out.push(c),
            _ if out.ends_with('-') || out.is_empty() => {}
            _ => out.push('-'),
        }
    }
    out.trim_end_matches('-').to_string()
}

fn construction_slug(name: &str) -> Result<&'static str> {
    Ok(match name {
        "CB" => "cb",
        "Y" => "y",
        "D" => "d",
        "OD" => "od",
        "PD" => "pd",
        "OPD" => "opd",
        "PD(V)" => "pd-v",
        "OPD(V)" => "opd-v",
        "D(V)" => "d-v",
        "OD(V)" => "od-v",
        "K2" => "k2",
        "OK2" => "ok2",
        other => return Err(Error::invalid(format!("unknown construction {other:?}"))),
    })
}

fn build_construction(b: &Building, name: &str) -> Result<(i64, Value)> {
    let poset_payload = |p: &crate::poset::Poset| -> Result<(i64, Value)> {
        Ok((p.dim(), serde_json::to_value(p.to_json())?))
    };
    match name {
        "CB" => {
            let cb = build_cb(b)?;
            Ok((cb.dim(), serde_json::to_value(cb.to_json())?))
        }
        "Y" => poset_payload(&build_y(b)?.poset),
        "D" => poset_payload(&build_d(b)?.poset),
        "OD" => poset_payload(&build_od(b)?.poset),
        "PD" => poset_payload(&build_pd(b)?.poset),
        "OPD" => poset_payload(&build_opd(b)?.poset),
        "PD(V)" | "OPD(V)" | "D(V)" | "OD(V)" | "K2" | "OK2" => {
            let (p, n) = linear_params(b)?;
            let poset = match name {
                "PD(V)" => vector_pd(p, n)?.poset,
                "OPD(V)" => vector_opd(p, n)?.poset,
                "D(V)" => vector_d(p, n)?.poset,
                "OD(V)" => vector_od(p, n)?.poset,
                "K2" => crossed_k2(p, n)?.poset,
                _ => crossed_ok2(p, n)?.poset,
            };
            poset_payload(&poset)
        }
        other => Err(Error::invalid(format!("unknown construction {other:?}"))),
    }
}

/// Build and serialize the configured constructions, one JSON file each.
pub fn cmd_build(cfg: &Config) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    if cfg.constructions.is_empty() {
        return Err(Error::invalid("no constructions requested"));
    }
    let b = parse_building(&cfg.building)?;
    fs::create_dir_all(&cfg.output_dir)?;
    let slug = building_slug(&cfg.building);
    let hash = config_hash(cfg)?;
    let mut written = Vec::new();
    for c in &cfg.constructions {
        let (dimension, content) = build_construction(&b, c)?;
        let artifact = json!({
            "building": cfg.building,
            "construction": c,
            "dimension": dimension,
            "config_hash": hash,
            "content": content,
        });
        let path =
            Path::new(&cfg.output_dir).join(format!("{slug}.{}.json", construction_slug(c)?));
        fs::write(&path, serde_json::to_string_pretty(&artifact)? + "\n")?;
        written.push(path);
    }
    Ok(written)
}

/// Run the named checks (all known checks when none are named).
pub fn cmd_check(cfg: &Config, ids: &[String]) -> Result<Report> {
    cfg.validate()?;
    let ids: Vec<String> = if !ids.is_empty() {
        ids.to_vec()
    } else if !cfg.checks.is_empty() {
        cfg.checks.clone()
    } else {
        CHECK_IDS.iter().map(|s| s.to_string()).collect()
    };
    for id in &ids {
        if !CHECK_IDS.contains(&id.as_str()) {
            return Err(Error::invalid(format!("unknown check id {id:?}")));
        }
    }
    let mut outcomes = Vec::new();
    for id in &ids {
        outcomes.push(run_check(id, cfg)?);
    }
    let timestamp =
        std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs());
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: config_hash(cfg)?,
        timestamp,
        outcomes,
    })
}

/// Consolidate report files into one Markdown table and one CSV, one row
/// per (building, check).  Conflicting duplicates are an error.
pub fn cmd_report(paths: &[PathBuf]) -> Result<(String, String)> {
    // Per row: the payload hash of the report it came from, so a conflict
    // names both sources distinctly even when their configs agree.
    let mut rows: BTreeMap<(String, String), (String, String, Status, f64)> = BTreeMap::new();
    for path in paths {
        let text = fs::read_to_string(path)?;
        let report: Report = serde_json::from_str(&text)?;
        let provenance = report.payload_hash()?;
        for o in report.outcomes {
            let key = (o.building.clone(), o.id.clone());
            if let Some((config, previous, status, _)) = rows.get(&key) {
                if *config != report.config_hash || *status != o.status {
                    return Err(Error::invalid(format!(
                        "conflicting rows for ({}, {}): report {} vs {}",
                        key.0, key.1, previous, provenance
                    )));
                }
                continue;
            }
            rows.insert(
                key,
                (report.config_hash.clone(), provenance.clone(), o.status, o.seconds),
            );
        }
    }
    let mut md = String::from("| building | check | status | seconds |\n|---|---|---|---|\n");
    let mut csv = String::from("building,check,status,seconds\n");
    for ((building, check), (_, _, status, seconds)) in &rows {
        let status = match status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unknown => "unknown",
            Status::Probe => "probe",
        };
        md.push_str(&format!("| {building} | {check} | {status} | {seconds:.3} |\n"));
        csv.push_str(&format!("{building},{check},{status},{seconds:.3}\n"));
    }
    Ok((md, csv))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn building_specs_parse() {
        assert_eq!(parse_building("A(p=2,n=3)").unwrap().dim(), 1);
        assert_eq!(parse_building("thin:A2").unwrap().dim(), 1);
        assert_eq!(parse_building(" A(p=3, n=2) ").unwrap().vertex_count(), 4);
        let err = parse_building("A(p=4,n=2)").map(|_| ()).unwrap_err();
        assert!(err.to_string().contains("p must be prime"), "{err}");
        assert!(parse_building("B(p=2,n=2)").is_err());
        assert!(parse_building("A(p=2)").is_err());
        assert!(parse_building("A(p=2,n=2,q=5)").is_err());
    }

    #[test]
    fn config_defaults_and_hashing() {
        let cfg = Config::default();
        cfg.validate().unwrap();
        let h1 = config_hash(&cfg).unwrap();
        let h2 = config_hash(&Config::default()).unwrap();
        assert_eq!(h1, h2);
        let mut other = Config::default();
        other.seed = 1;
        assert_ne!(h1, config_hash(&other).unwrap());
        // The spec form of a subgroup entry parses.
        let cfg: Config = serde_json::from_str(
            r#"{"building":"A(p=2,n=2)","subgroups":[{"generators":[[[1,1],[0,1]]],"field":2}]}"#,
        )
        .unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.subgroups[0].generators[0][0], vec![1, 1]);
    }

    #[test]
    fn unknown_ids_are_config_errors() {
        let cfg = Config::default();
        assert!(run_check("no-such-check", &cfg).is_err());
        assert!(cmd_check(&cfg, &["no-such-check".to_string()]).is_err());
        let mut bad = Config::default();
        bad.checks = vec!["nope".to_string()];
        assert!(bad.validate().is_err());
    }

    #[test]
    fn small_checks_pass() {
        let cfg = Config::default();
        for id in ["cb-pd-equiv", "opd-join", "od-cm", "d-cm", "pd-spherical", "wedge-book"] {
            let o = run_check(id, &cfg).unwrap();
            assert_eq!(o.status, Status::Pass, "{id}: {}", o.values);
        }
        let o = run_check("y-question", &cfg).unwrap();
        assert_eq!(o.status, Status::Probe);
        assert_eq!(o.values["rows"].as_array().unwrap().len(), 7);
    }

    #[test]
    fn report_hash_ignores_clocks() {
        let cfg = Config::default();
        let mut r1 = cmd_check(&cfg, &["d-cm".to_string()]).unwrap();
        let mut r2 = cmd_check(&cfg, &["d-cm".to_string()]).unwrap();
        assert_eq!(r1.payload_hash().unwrap(), r2.payload_hash().unwrap());
        r1.timestamp = 7;
        r2.timestamp = 8;
        r2.outcomes[0].seconds += 1.0;
        assert_eq!(r1.payload_hash().unwrap(), r2.payload_hash().unwrap());
        assert_eq!(r1.exit_code(), 0);
    }

    #[test]
    fn build_writes_reported_dimension() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = Config::default();
        cfg.building = "thin:A2".to_string();
        cfg.constructions = vec!["Y".to_string(), "CB".to_string()];
        cfg.output_dir = dir.path().to_string_lossy().to_string();
        let paths = cmd_build(&cfg).unwrap();
        assert_eq!(paths.len(), 2);
        let y: Value =
            serde_json::from_str(&fs::read_to_string(&paths[0]).unwrap()).unwrap();
        assert_eq!(y["dimension"], json!(4));
        assert_eq!(y["construction"], json!("Y"));
        // Same config, same bytes.
        let before = fs::read_to_string(&paths[0]).unwrap();
        cmd_build(&cfg).unwrap();
        assert_eq!(before, fs::read_to_string(&paths[0]).unwrap());
    }

    #[test]
    fn consolidated_reports_detect_conflicts() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = Config::default();
        let report = cmd_check(&cfg, &["d-cm".to_string()]).unwrap();
        let p1 = dir.path().join("r1.json");
        fs::write(&p1, report.to_json_string().unwrap()).unwrap();
        let (md, csv) = cmd_report(&[p1.clone()]).unwrap();
        assert!(md.contains("| A(p=2,n=2) | d-cm | pass |"), "{md}");
        assert!(csv.starts_with("building,check,status,seconds\n"));
        // Identical duplicate rows collapse.
        let (md2, _) = cmd_report(&[p1.clone(), p1.clone()]).unwrap();
        assert_eq!(md2.lines().count(), md.lines().count());
        // A conflicting duplicate is an error naming both source reports.
        let mut other = report.clone();
        other.outcomes[0].status = Status::Fail;
        let p2 = dir.path().join("r2.json");
        fs::write(&p2, other.to_json_string().unwrap()).unwrap();
        let err = cmd_report(&[p1, p2]).unwrap_err().to_string();
        let h1 = report.payload_hash().unwrap();
        let h2 = other.payload_hash().unwrap();
        assert_ne!(h1, h2);
        assert!(err.contains(&h1) && err.contains(&h2), "{err}");
        // Empty input: header only.
        let (md, csv) = cmd_report(&[]).unwrap();
        assert_eq!(md.lines().count(), 2);
        assert_eq!(csv.lines().count(), 1);
    }

    #[test]
    fn memory_cap_shrinks_budgets() {
        let mut cfg = Config::default();
        std::env::set_var("DECOMP_BUDGET_MB", "16");
        cfg.apply_memory_env().unwrap();
        std::env::remove_var("DECOMP_BUDGET_MB");
        assert_eq!(cfg.budgets.memory_mb, 16);
        assert_eq!(cfg.budgets.faces, 16 * 8192);
        assert_eq!(cfg.budgets.poset_elements, 16 * 2048);
    }
}
