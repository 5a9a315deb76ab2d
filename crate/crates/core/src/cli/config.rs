//! Run configuration: a flat `key = value` file (TOML syntax), overridden by
//! `DSH_<KEY>` environment variables and then by command-line flags.
//!
//! | key | default | meaning |
//! |-----|---------|---------|
//! | `n`, `radius` | 3, 1.0 | spacetime dimension and de Sitter radius |
//! | `rho` / `mu` | 1.5 / unset | spectral parameter; `mu` wins when set |
//! | `alpha`, `m`, `degrees` | 2, 0, zeros | plane-wave labels (`degrees` has `n − 2` entries) |
//! | `mode` | `hyper` | `hyper` or `ambient` plane waves |
//! | `direction` | `e_n` | direction `u` of `ξ = (1, u)` for ambient waves |
//! | `beta_min`, `beta_max`, `beta_nodes` | −3, 3, 61 | `β` grid |
//! | `polar`, `phi` | 1.0 each, 0.3 | fixed angles of the grid |
//! | `profile_center`, `profile_delta`, `profile_shape`, `profile_amplitude` | `e_n`, 0.5, 1, 1 | wavepacket profile |
//! | `grid_theta`, `grid_polar`, `grid_phi` | 24, 12, 24 | cap quadrature |
//! | `path_direction`, `path_beta_min`, `path_beta_max`, `path_nodes` | `e_1`, 1, 8, 120 | decay path |
//! | `decay_blocks`, `decay_window` | 12, 4 | decay fit layout |
//! | `flat_radii`, `flat_point`, `flat_momentum` | 10…10⁴, (0.5, 0.3…), (0.4, 0…) | flat-limit scan |
//! | `contract_radii` | 10…10⁴ | contraction scan |
//! | `appendix_rho`, `appendix_eps` | 0.5, 1, 2 / 10⁻¹…10⁻⁴ | appendix oracle |
//! | `words` | 10000 | random words in the isometry suite |
//! | `seed` | 0 | random seed |
//! | `svg` | false | also write SVG plots |

use std::path::Path;

use serde::{Deserialize, Serialize};

/// Environment variables reserved for flags rather than config keys.
const FLAG_VARS: [&str; 4] = ["CONFIG", "OUT", "THREADS", "SEED"];

pub const ENV_PREFIX: &str = "DSH_";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    pub radius: f64,
    pub rho: f64,
    pub mu: Option<f64>,
    pub alpha: u8,
    pub m: i64,
    pub degrees: Vec<u32>,
    pub mode: WaveMode,
    pub direction: Vec<f64>,
    pub beta_min: f64,
    pub beta_max: f64,
    pub beta_nodes: usize,
    pub polar: Vec<f64>,
    pub phi: f64,
    pub profile_center: Vec<f64>,
    pub profile_delta: f64,
    pub profile_shape: f64,
    pub profile_amplitude: f64,
    pub grid_theta: usize,
    pub grid_polar: usize,
    pub grid_phi: usize,
    pub path_direction: Vec<f64>,
    pub path_beta_min: f64,
    pub path_beta_max: f64,
    pub path_nodes: usize,
    pub decay_blocks: usize,
    pub decay_window: usize,
    pub flat_radii: Vec<f64>,
    pub flat_point: Vec<f64>,
    pub flat_momentum: Vec<f64>,
    pub contract_radii: Vec<f64>,
    pub appendix_rho: Vec<f64>,
    pub appendix_eps: Vec<f64>,
    pub words: usize,
    pub seed: u64,
    pub svg: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveMode {
    Hyper,
    Ambient,
}

impl Default for RunConfig {
    fn default() -> Self {
        let decades = vec![10.0, 100.0, 1000.0, 10000.0];
        Self {
            n: 3,
            radius: 1.0,
            rho: 1.5,
            mu: None,
            alpha: 2,
            m: 0,
            degrees: Vec::new(),
            mode: WaveMode::Hyper,
            direction: Vec::new(),
            beta_min: -3.0,
            beta_max: 3.0,
            beta_nodes: 61,
            polar: Vec::new(),
            phi: 0.3,
            profile_center: Vec::new(),
            profile_delta: 0.5,
            profile_shape: 1.0,
            profile_amplitude: 1.0,
            grid_theta: 24,
            grid_polar: 12,
            grid_phi: 24,
            path_direction: Vec::new(),
            path_beta_min: 1.0,
            path_beta_max: 8.0,
            path_nodes: 120,
            decay_blocks: 12,
            decay_window: 4,
            flat_radii: decades.clone(),
            flat_point: Vec::new(),
            flat_momentum: Vec::new(),
            contract_radii: decades,
            appendix_rho: vec![0.5, 1.0, 2.0],
            appendix_eps: crate::limits::appendix::DEFAULT_EPS.to_vec(),
            words: 10_000,
            seed: 0,
            svg: false,
        }
    }
}

fn unit(n: usize, k: usize) -> Vec<f64> {
    let mut u = vec![0.0; n];
    u[k] = 1.0;
    u
}

impl RunConfig {
    /// Parses a config file body.
    pub fn from_toml(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    /// Defaults, then the file at `path` if any, then `DSH_<KEY>` variables
    /// from `env`.
    pub fn load<I>(path: Option<&Path>, env: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let text = match path {
            Some(p) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?,
            None => String::new(),
        };
        let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| e.to_string())?;
        let mut vars: Vec<(String, String)> = env
            .into_iter()
            .filter_map(|(k, v)| k.strip_prefix(ENV_PREFIX).map(|rest| (rest.to_string(), v)))
            .filter(|(k, _)| !FLAG_VARS.contains(&k.as_str()))
            .collect();
        vars.sort();
        for (key, raw) in vars {
            let value = match format!("v = {raw}").parse::<toml::Table>() {
                Ok(mut t) => t.remove("v").expect("key just written"),
                Err(_) => toml::Value::String(raw),
            };
            table.insert(key.to_lowercase(), value);
        }
        let cfg: RunConfig = table.try_into().map_err(|e: toml::de::Error| e.to_string())?;
        cfg.normalized()
    }

    /// Fills dimension-dependent defaults and checks ranges.
    pub fn normalized(mut self) -> Result<Self, String> {
        let n = self.n;
        if n < 2 {
            return Err(format!("n = {n} must be at least 2"));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(format!("radius = {} must be positive", self.radius));
        }
        if self.degrees.is_empty() {
            self.degrees = vec![0; n - 2];
        }
        if self.polar.is_empty() {
            self.polar = vec![1.0; n - 2];
        }
        if self.direction.is_empty() {
            self.direction = unit(n, n - 1);
        }
        if self.profile_center.is_empty() {
            self.profile_center = unit(n, n - 1);
        }
        if self.path_direction.is_empty() {
            self.path_direction = unit(n, 0);
        }
        if self.flat_point.is_empty() {
            self.flat_point = std::iter::once(0.5).chain(std::iter::repeat(0.3).take(n - 1)).collect();
        }
        if self.flat_momentum.is_empty() {
            self.flat_momentum = std::iter::once(0.4).chain(std::iter::repeat(0.0).take(n - 2)).collect();
        }
        let lens = [
            ("degrees", self.degrees.len(), n - 2),
            ("polar", self.polar.len(), n - 2),
            ("direction", self.direction.len(), n),
            ("profile_center", self.profile_center.len(), n),
            ("path_direction", self.path_direction.len(), n),
            ("flat_point", self.flat_point.len(), n),
            ("flat_momentum", self.flat_momentum.len(), n - 1),
        ];
        for (name, got, want) in lens {
            if got != want {
                return Err(format!("{name} has {got} entries, expected {want} for n = {n}"));
            }
        }
        if self.beta_nodes < 2 || !(self.beta_max > self.beta_min) {
            return Err("β grid needs beta_max > beta_min and at least two nodes".into());
        }
        if self.path_nodes < self.decay_blocks || !(self.path_beta_max > self.path_beta_min) {
            return Err("decay path needs path_beta_max > path_beta_min and path_nodes ≥ decay_blocks".into());
        }
        if self.flat_radii.len() < 2 || self.contract_radii.len() < 2 {
            return Err("radius scans need at least two radii".into());
        }
        if self.flat_radii.iter().chain(&self.contract_radii).any(|r| !(*r > 0.0)) {
            return Err("radii must be positive".into());
        }
        if self.grid_theta == 0 || self.grid_polar == 0 || self.grid_phi == 0 {
            return Err("quadrature sizes must be positive".into());
        }
        Ok(self)
    }

    /// The configuration as `key = value` lines, in field order.
    pub fn echo(&self) -> Vec<String> {
        toml::to_string(self)
            .expect("config serializes")
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(str::to_string)
            .collect()
    }
}
