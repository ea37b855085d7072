//! Canonical paths between realizations: cycle frames, `F` matrices,
//! friendly paths, OK/KO milestones and the per-cycle solver.

pub mod along;
pub mod fmatrix;
pub mod frame;
pub mod friendly;
pub mod okko;
pub mod path;
pub mod switch;

pub use fmatrix::{cousins, f_matrix, hat_matrix, position_distance, FMatrix, HatMatrix};
pub use frame::{offset, CycleFrame, Pos};
pub use friendly::{
    adjusted_positions, blocks, down_line, find_friendly_path, same_state_pattern, up_line, Dichotomy,
    FriendlyPath, SameState, SteinhausSet,
};
pub use okko::{bridge, low_deviation_bridge, milestone_graph, ok_ko_step, Milestone, OkKoKind, OkKoSpec, OkKoStep};
pub use along::{path_along_cycle, solve, CyclePath, CycleStats};
pub use switch::{switch_distance, DEFAULT_SWITCH_CAP};
pub use path::{canonical_path, certify, path_distribution, CanonicalPath, MAX_PAIRINGS};
