//! Finite ternary-frame relational semantics: frame validation, downset
//! valuations, frame-condition and structural-law checking, the
//! condition/law correspondence verifier, frame generation, and
//! countermodel search.

mod battery;
mod counter;
mod frame;
mod gen;
mod laws;

pub use battery::ModelBattery;
pub use counter::{countermodel, refute_in_frame};
pub use frame::{
    DownSet, Frame, FrameError, FrameFileError, FrameViolation, TernaryRel, Valuation, MAX_WORLDS,
};
pub use gen::{
    enumerate_frames, is_canonical, random_frame, random_skmbica_frame, sample_skmbica_frames,
};
pub use laws::{
    check_condition, correspondence_report, frame_satisfies, law_valid, law_valid_in, CondOutcome,
    CorrespondenceRow, FrameCondition, LawOutcome, SetAlgebra, StructuralLaw,
};
