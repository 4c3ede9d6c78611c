//! Benchmark fixtures shared by the criterion targets.

use detscheme_core::DegreeData;

/// The cubic scroll in P^4 and two larger instances.
pub fn fixtures() -> Vec<(&'static str, DegreeData)> {
    [
        ("scroll", "n=4 a=1,1,1 b=0,0"),
        ("bordiga", "n=4 a=1,1,1,1 b=0,0,0"),
        ("c3-mixed", "n=6 a=1,1,1,2 b=0,0"),
    ]
    .into_iter()
    .map(|(name, s)| (name, s.parse().expect("fixture parses")))
    .collect()
}
