//! Ray schedules, decay profiles and window detectors.

pub mod profile;
pub mod psi;
pub mod schedule;
pub mod windows;

pub use profile::{decay_profile, DecayProfile};
pub use psi::{estimate_tau, psi, psi_sensitivity, psi_window_search, AnchorResult, PsiParams, PsiWindow, SensitivityRun};
pub use schedule::{build_schedule, GrowthClass, RaySchedule, ScheduleRule};
pub use windows::{
    classify, detect_coeff_gaps, detect_decay_windows, detect_stationary_runs, gap_cases, verify_coeff_gaps,
    verify_stationary, CaseReport, Window, WindowKind,
};
