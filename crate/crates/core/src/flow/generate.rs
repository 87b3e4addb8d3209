//! Seeded random band flows.

use rand::Rng;

use super::{Band, FlowSpec, Line};

/// Random valid band flow with `1..=max_lines` lines. Interior bands between
/// lines of equal direction are invariant or transitions at random; between
/// opposite directions they must be transitions.
pub fn random_band_spec<R: Rng>(rng: &mut R, max_lines: usize) -> FlowSpec {
    let n = rng.gen_range(1..=max_lines.max(1));
    let mut x = rng.gen_range(-4.0..-1.0);
    let mut lines = Vec::with_capacity(n);
    for _ in 0..n {
        lines.push(Line {
            x,
            dir: if rng.gen_bool(0.5) { 1 } else { -1 },
        });
        x += rng.gen_range(0.5..2.5);
    }
    let mut bands = vec![Band::Invariant];
    for w in lines.windows(2) {
        let transition = w[0].dir != w[1].dir || rng.gen_bool(0.5);
        bands.push(if transition {
            Band::Transition {
                sign: if rng.gen_bool(0.5) { 1 } else { -1 },
            }
        } else {
            Band::Invariant
        });
    }
    bands.push(Band::Invariant);
    FlowSpec::bands(lines, bands).expect("generator respects the band axioms")
}
