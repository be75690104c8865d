use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use super::{Category, SaturationFit, SweepPoint};

/// Marks that `rg` compares greedy solutions, not true optima.
pub const RG_BASIS: &str = "greedy";

/// Diagnostics for one network. Fields that were not requested stay `None`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricsReport {
    pub graph: String,
    pub weight_model: String,
    pub k: usize,
    pub alpha: f64,
    pub rg: Option<f64>,
    pub fit: Option<SaturationFit>,
    pub is_value: Option<f64>,
    pub hr: Vec<(usize, f64)>,
    pub category: Option<Category>,
    pub alpha_curve: Vec<SweepPoint>,
}

/// Keys like `0.0`, `0.5`, `0.25`.
fn alpha_key(alpha: f64) -> String {
    format!("{alpha:?}")
}

impl MetricsReport {
    pub fn to_json(&self) -> Value {
        let hr: Map<String, Value> = self
            .hr
            .iter()
            .map(|&(k, v)| (k.to_string(), json!(v)))
            .collect();
        let curve: Map<String, Value> = self
            .alpha_curve
            .iter()
            .map(|p| (alpha_key(p.alpha), json!(p.rg)))
            .collect();
        json!({
            "graph": self.graph,
            "weight_model": self.weight_model,
            "k": self.k,
            "alpha": self.alpha,
            "rg": self.rg,
            "rg_basis": RG_BASIS,
            "sigma1": self.fit.map(|f| f.sigma1),
            "sigma0": self.fit.map(|f| f.sigma0),
            "k_min": self.fit.map(|f| f.k_min),
            "k_max": self.fit.map(|f| f.k_max),
            "is": self.is_value,
            "hr": hr,
            "category": self.category.map(Category::as_str),
            "alpha_curve": curve,
        })
    }

    pub const CSV_HEADER: &'static str =
        "graph,weight_model,k,alpha,rg,sigma1,sigma0,is,hr_2,hr_max_k,hr_max,category";

    /// One flat row for cross-network tables; empty cells for missing values.
    pub fn to_csv_row(&self) -> String {
        fn cell<T: ToString>(v: Option<T>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        let hr2 = self.hr.iter().find(|(k, _)| *k == 2).map(|&(_, v)| v);
        let last = self.hr.last().copied();
        let mut out = String::new();
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.graph,
            self.weight_model,
            self.k,
            self.alpha,
            cell(self.rg),
            cell(self.fit.map(|f| f.sigma1)),
            cell(self.fit.map(|f| f.sigma0)),
            cell(self.is_value),
            cell(hr2),
            cell(last.map(|l| l.0)),
            cell(last.map(|l| l.1)),
            cell(self.category),
        );
        out
    }
}
