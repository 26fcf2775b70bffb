use serde::Serialize;

/// Everything needed to reproduce a report. Wall time is only recorded on
/// request, so that identical manifests give byte-identical output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Arguments after the program name.
    pub args: Vec<String>,
    pub catalog_version: String,
    pub seed: u64,
    pub trials: usize,
    pub cap: u64,
    pub exec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl RunManifest {
    pub fn text_header(&self) -> String {
        let mut s = format!(
            "# {} {} | catalog {} | seed {} | trials {} | cap {} | {}",
            self.tool,
            self.args.join(" "),
            self.catalog_version,
            self.seed,
            self.trials,
            self.cap,
            self.exec
        );
        if let Some(t) = self.wall_time_ms {
            s.push_str(&format!(" | {t} ms"));
        }
        s
    }
}
