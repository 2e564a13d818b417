//! Bundled dimers.

use crate::dimer::Dimer;
use crate::dtf::parse_dimer;

pub const TORUS1: &str = include_str!("../data/torus1.dtf");
pub const SPP: &str = include_str!("../data/spp.dtf");
pub const GALLERY1: &str = include_str!("../data/gallery1.dtf");
pub const GALLERY2: &str = include_str!("../data/gallery2.dtf");
pub const GALLERY3: &str = include_str!("../data/gallery3.dtf");
pub const GALLERY4: &str = include_str!("../data/gallery4.dtf");
pub const HEXAGON: &str = include_str!("../data/hexagon.dtf");
/// Weight 1 on arrows 1, 4, 6, 16.
pub const HEXAGON_WEIGHTS: &str = include_str!("../data/hexagon.w");

pub const NAMES: [&str; 7] = ["torus1", "spp", "gallery1", "gallery2", "gallery3", "gallery4", "hexagon"];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "torus1" => TORUS1,
        "spp" => SPP,
        "gallery1" => GALLERY1,
        "gallery2" => GALLERY2,
        "gallery3" => GALLERY3,
        "gallery4" => GALLERY4,
        "hexagon" => HEXAGON,
        _ => return None,
    })
}

/// Parse a bundled dimer; panics on an unknown name since the corpus is fixed.
pub fn load(name: &str) -> Dimer {
    let text = source(name).unwrap_or_else(|| panic!("no bundled dimer '{name}'"));
    parse_dimer(text).unwrap_or_else(|e| panic!("bundled dimer '{name}' is invalid: {e}"))
}

pub fn all() -> Vec<Dimer> {
    NAMES.iter().map(|n| load(n)).collect()
}
