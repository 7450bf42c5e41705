use std::path::Path;

use lexiphy_core::mcmc::Trace;

use crate::error::Result;

/// `iter,logpost,temperature,pi1,mu,accepted` rows.
pub fn trace_to_csv(trace: &Trace) -> String {
    let mut out = String::from("iter,logpost,temperature,pi1,mu,accepted\n");
    for r in &trace.records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.iteration, r.log_posterior, r.temperature, r.pi1, r.mu, r.accepted as u8
        ));
    }
    out
}

pub fn write_trace(path: &Path, trace: &Trace) -> Result<()> {
    super::write_text(path, &trace_to_csv(trace))
}
