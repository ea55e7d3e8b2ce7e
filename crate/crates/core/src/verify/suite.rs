use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{independence_check, verify_bridge, verify_remark, RankModel, RemarkKind, Report, Summary, Verifier};
use crate::error::{invalid, Error, Result};
use crate::genfun::{verify_b_diff, verify_g_diff, verify_recurrence};
use crate::models::Eps;
use crate::rational::{parse_rational, Rational};
use crate::transforms::verify_transform;
use crate::words::{h1_basis, indices_up_to_weight, PairIndex, Word};

/// Bounds of the verification suite. Every field has a default, so a config
/// file only lists what it changes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Largest `c_1 + ... + c_2r` for the finite main theorem.
    pub max_weight: u32,
    pub max_n: u32,
    pub order: usize,
    /// Rational-point checks run for `sum c <= rational_max_weight` and `N <= rational_max_n`.
    pub rational_max_weight: u32,
    pub rational_max_n: u32,
    pub rational_q_samples: Vec<String>,
    /// Basis words of `h^1` up to this length enter the bridge check.
    pub bridge_max_weight: usize,
    pub infinite_max_weight: u32,
    pub infinite_order: usize,
    pub genfun_max_n: u32,
    pub max_r: usize,
    pub maxdeg: u32,
    pub genfun_order: usize,
    /// Depth one uses `l, k <= transform_max_entry`, depth two `sum(l + k) <= transform_max_total`.
    pub transform_max_entry: u32,
    pub transform_max_total: u32,
    pub transform_order: usize,
    pub remark_max_total: u32,
    pub qmsw_max_weight: u32,
    pub remark_max_n: u32,
    pub remark_order: usize,
    pub classical_max_weight: u32,
    pub classical_max_n: u32,
    pub independence_max_weight: usize,
    pub independence_max_n: u32,
    pub independence_order: usize,
    /// Worker threads; `None` lets rayon decide. `QMZV_PARALLELISM` overrides it.
    pub parallelism: Option<usize>,
    /// Identity names to run; a name also selects `name_*`. Empty runs everything.
    pub filter: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_weight: 6,
            max_n: 8,
            order: 30,
            rational_max_weight: 5,
            rational_max_n: 5,
            rational_q_samples: ["2", "1/2", "3", "-2", "5/7"].map(String::from).to_vec(),
            bridge_max_weight: 4,
            infinite_max_weight: 5,
            infinite_order: 20,
            genfun_max_n: 4,
            max_r: 2,
            maxdeg: 2,
            genfun_order: 15,
            transform_max_entry: 4,
            transform_max_total: 8,
            transform_order: 20,
            remark_max_total: 6,
            qmsw_max_weight: 5,
            remark_max_n: 6,
            remark_order: 25,
            classical_max_weight: 7,
            classical_max_n: 12,
            independence_max_weight: 4,
            independence_max_n: 6,
            independence_order: 25,
            parallelism: None,
            filter: Vec::new(),
        }
    }
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SuiteConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn q_samples(&self) -> Result<Vec<Rational>> {
        self.rational_q_samples.iter().map(|s| parse_rational(s)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        for q in self.q_samples()? {
            if q == Rational::from_integer(0.into()) || q == Rational::from_integer(1.into()) || q == Rational::from_integer((-1).into()) {
                return invalid(format!("q sample {q} is excluded (0, 1 and -1 are not allowed)"));
            }
        }
        if self.max_n == 0 || self.order == 0 {
            return invalid("max_n and order must be positive");
        }
        if self.max_r > 4 {
            return invalid("max_r above 4 is out of desk scale");
        }
        if self.parallelism == Some(0) {
            return invalid("parallelism must be positive");
        }
        Ok(())
    }

    /// The thread count after applying `QMZV_PARALLELISM`.
    pub fn effective_parallelism(&self) -> Result<Option<usize>> {
        match std::env::var("QMZV_PARALLELISM") {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n > 0 => Ok(Some(n)),
                _ => invalid(format!("QMZV_PARALLELISM must be a positive integer, got `{v}`")),
            },
            Err(_) => Ok(self.parallelism),
        }
    }

    fn selects(&self, identity: &str) -> bool {
        self.filter.is_empty() || self.filter.iter().any(|f| identity == f || identity.starts_with(&format!("{f}_")))
    }
}

/// One verification instance of the suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Case {
    MainFinite { eps: u32, c: Vec<u32>, n: u32 },
    MainFiniteBz { c: Vec<u32>, n: u32, rational: bool },
    MainInfinite { c: Vec<u32> },
    GDiff { eps: u32, m: u32, n: u32, r: usize },
    Recurrence { eps: u32, m: u32, n: u32, r: usize },
    BDiff { eps: u32, m: u32, n: u32 },
    Transform { which: u8, l: Vec<u32>, k: Vec<u32> },
    Remark { remark: RemarkKind, l: Vec<u32>, k: Vec<u32>, n: u32 },
    Classical { c: Vec<u32>, n: u32 },
    Bridge { word: String, n: u32, q: String },
    Independence { model: RankModel },
}

impl Case {
    pub fn identity(&self) -> String {
        match self {
            Case::MainFinite { .. } => "main_finite".into(),
            Case::MainFiniteBz { .. } => "main_finite_bz".into(),
            Case::MainInfinite { .. } => "main_infinite".into(),
            Case::GDiff { .. } => "g_diff".into(),
            Case::Recurrence { m: 0, .. } => "recurrence".into(),
            Case::Recurrence { .. } => "recurrence_with_m".into(),
            Case::BDiff { .. } => "b_diff".into(),
            Case::Transform { which, .. } => format!("transform_{which}"),
            Case::Remark { remark, .. } => remark.name().into(),
            Case::Classical { .. } => "classical".into(),
            Case::Bridge { .. } => "bridge".into(),
            Case::Independence { model: RankModel::Dagger } => "independence_dagger".into(),
            Case::Independence { model: RankModel::Bz } => "independence_bz".into(),
        }
    }

    pub fn run(&self, v: &Verifier, cfg: &SuiteConfig) -> Result<Report> {
        let pi = |c: &[u32]| PairIndex::new(c.to_vec());
        match self {
            Case::MainFinite { eps, c, n } => v.main_finite(Eps::from_u32(*eps)?, &pi(c)?, *n, cfg.order),
            Case::MainFiniteBz { c, n, rational } => {
                let qs = if *rational { cfg.q_samples()? } else { Vec::new() };
                v.main_finite_bz(&pi(c)?, *n, cfg.order, &qs)
            }
            Case::MainInfinite { c } => v.main_infinite(&pi(c)?, cfg.infinite_order),
            Case::GDiff { eps, m, n, r } => verify_g_diff(Eps::from_u32(*eps)?, *m, *n, *r, cfg.maxdeg, cfg.genfun_order),
            Case::Recurrence { eps, m, n, r } => {
                verify_recurrence(Eps::from_u32(*eps)?, *m, *n, *r, cfg.maxdeg, cfg.genfun_order)
            }
            Case::BDiff { eps, m, n } => verify_b_diff(Eps::from_u32(*eps)?, *m, *n, cfg.maxdeg, cfg.genfun_order),
            Case::Transform { which, l, k } => verify_transform(*which, l, k, cfg.transform_order),
            Case::Remark { remark, l, k, n } => verify_remark(*remark, l, k, *n, cfg.remark_order),
            Case::Classical { c, n } => v.classical(&pi(c)?, *n),
            Case::Bridge { word, n, q } => verify_bridge(&word.parse::<Word>()?, *n, &parse_rational(q)?),
            Case::Independence { model } => {
                let ns: Vec<u32> = (1..=cfg.independence_max_n).collect();
                independence_check(*model, cfg.independence_max_weight, &ns, cfg.independence_order)
            }
        }
    }
}

fn pair_grid(max_total: u32) -> Vec<Vec<u32>> {
    PairIndex::enumerate(max_total).into_iter().map(|c| c.flat().to_vec()).collect()
}

/// Every case within the configured bounds, in a fixed order.
pub fn cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for c in pair_grid(cfg.max_weight) {
        for n in 1..=cfg.max_n {
            for eps in 0..=1 {
                out.push(Case::MainFinite { eps, c: c.clone(), n });
            }
            let total: u32 = c.iter().sum();
            let rational = total <= cfg.rational_max_weight && n <= cfg.rational_max_n && !cfg.rational_q_samples.is_empty();
            out.push(Case::MainFiniteBz { c: c.clone(), n, rational });
        }
    }
    for c in pair_grid(cfg.infinite_max_weight) {
        out.push(Case::MainInfinite { c });
    }
    for n in 1..=cfg.genfun_max_n {
        for m in 0..n {
            for eps in 0..=1 {
                for r in 0..=cfg.max_r {
                    if m > 0 && r > 0 {
                        out.push(Case::GDiff { eps, m, n, r });
                    }
                    out.push(Case::Recurrence { eps, m, n, r });
                }
                if m > 0 {
                    out.push(Case::BDiff { eps, m, n });
                }
            }
        }
    }
    let e = cfg.transform_max_entry;
    let mut depth_one = Vec::new();
    for l in 1..=e {
        for k in 1..=e {
            depth_one.push((vec![l], vec![k]));
        }
    }
    let depth_two: Vec<(Vec<u32>, Vec<u32>)> = pair_grid(cfg.transform_max_total)
        .into_iter()
        .filter(|c| c.len() == 4)
        .map(|c| (vec![c[0], c[2]], vec![c[1], c[3]]))
        .collect();
    for (l, k) in depth_one.iter().chain(&depth_two) {
        for which in [1, 3] {
            out.push(Case::Transform { which, l: l.clone(), k: k.clone() });
        }
        if l.iter().all(|&x| x == 1) {
            for which in [2, 4] {
                out.push(Case::Transform { which, l: Vec::new(), k: k.clone() });
            }
        }
    }
    for c in pair_grid(cfg.remark_max_total).into_iter().filter(|c| !c.is_empty()) {
        let l: Vec<u32> = c.iter().step_by(2).copied().collect();
        let k: Vec<u32> = c.iter().skip(1).step_by(2).copied().collect();
        for n in 1..=cfg.remark_max_n {
            for remark in [RemarkKind::DualFlat, RemarkKind::DualDiamond] {
                out.push(Case::Remark { remark, l: l.clone(), k: k.clone(), n });
            }
        }
    }
    for k in indices_up_to_weight(cfg.qmsw_max_weight) {
        for n in 1..=cfg.remark_max_n {
            out.push(Case::Remark { remark: RemarkKind::Qmsw, l: Vec::new(), k: k.clone(), n });
        }
    }
    for c in pair_grid(cfg.classical_max_weight) {
        for n in 1..=cfg.classical_max_n {
            out.push(Case::Classical { c: c.clone(), n });
        }
    }
    for w in h1_basis(cfg.bridge_max_weight) {
        for n in 1..=cfg.rational_max_n {
            for q in &cfg.rational_q_samples {
                let word = if w.is_empty() { "1".to_string() } else { w.compact() };
                out.push(Case::Bridge { word, n, q: q.clone() });
            }
        }
    }
    out.push(Case::Independence { model: RankModel::Dagger });
    out.push(Case::Independence { model: RankModel::Bz });
    out.retain(|c| cfg.selects(&c.identity()));
    out
}

/// Reports in case order together with their totals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub reports: Vec<Report>,
    pub summary: Summary,
}

/// Runs the suite with a fresh, unmutated verifier.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    run_suite_with(cfg, &Verifier::new())
}

/// Runs every case of `cfg` in parallel; reports keep the case order. A case
/// whose evaluation errors is reported as a failure carrying the message.
pub fn run_suite_with(cfg: &SuiteConfig, verifier: &Verifier) -> Result<SuiteOutcome> {
    cfg.validate()?;
    let list = cases(cfg);
    let run = || -> Vec<Report> {
        list.par_iter()
            .map(|case| match case.run(verifier, cfg) {
                Ok(r) => r,
                Err(e) => {
                    let mut r = Report::new(case.identity()).param("case", case).detail(format!("error: {e}"));
                    r.status = super::Status::Fail;
                    r
                }
            })
            .collect()
    };
    let reports = match cfg.effective_parallelism()? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(run),
        None => run(),
    };
    let summary = Summary::of(&reports);
    Ok(SuiteOutcome { reports, summary })
}
