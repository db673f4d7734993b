//! Mechanical verification of the implication diagram: ten property nodes,
//! nine downward implications checked constructively on randomized finite
//! families, the structural equivalences behind the rows, and the nine
//! counterexample families certifying that no implication reverses.

mod generate;
mod report;
mod verify;

pub use generate::{random_dist, random_family, GeneratorConfig};
pub use report::{
    render_report, BulletResult, EdgeResult, EquivalenceResult, ReportFormat,
};
pub use verify::{verify_counterexamples, verify_implications, DiagramReport, VerifyConfig};
