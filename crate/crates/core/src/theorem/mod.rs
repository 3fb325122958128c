//! The DG syzygy construction, the amplitude bound `n <= amp H(A)` for DG
//! modules, the bound `n <= ecodepth R` for modules over monomial rings, and
//! a seeded search for independent families.

mod dg;
mod module;
mod report;
mod search;
mod syzygy;

pub use dg::{annihilation_check, verify_dg_theorem, AnnihilationReport};
pub use module::{base_case_pipeline, power_witness, regular_element_reduction, verify_module_theorem, ReductionReport};
pub use report::{Step, TheoremReport, Verdict, Witness, REPORT_SCHEMA};
pub use search::{candidate_pool, search_independent_families, Finding, SearchConfig, SearchReport};
pub use syzygy::{
    batch_syzygy_independence, syzygy_construction, verify_syzygy_bounds, verify_syzygy_independence, BatchReport, PackageChecks,
    SyzygyBoundsReport, SyzygyIndependenceReport, SyzygyPackage,
};
