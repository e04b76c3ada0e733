//! Antenna movement regions and their intrinsic geometry.

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// Axis-aligned movement region with 0 to 3 side lengths in wavelengths.
///
/// An empty side list is a fixed antenna position; one, two or three sides
/// give a segment, a rectangle or a cuboid. Zero-length sides are allowed
/// and treated literally as degenerate boxes.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainBox {
    sides: Vec<f64>,
}

impl DomainBox {
    /// Builds a region from its side lengths (each finite and `>= 0`).
    pub fn new<S: AsRef<[f64]>>(sides: S) -> Result<Self> {
        let sides = sides.as_ref().to_vec();
        if sides.len() > 3 {
            return Err(Error::TooManyDimensions(sides.len()));
        }
        for &s in &sides {
            ensure_non_negative("side length", s)?;
        }
        Ok(Self { sides })
    }

    /// A fixed antenna position (0-dimensional region).
    pub fn point() -> Self {
        Self { sides: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[f64] {
        &self.sides
    }

    /// Euclidean intrinsic volumes `[L0, .., L_dim]`.
    ///
    /// These are the elementary symmetric functions of the sides: the 0th is
    /// always 1, then total edge extent, half surface area, and volume.
    pub fn intrinsic_volumes(&self) -> Vec<f64> {
        elementary_symmetric(&self.sides)[..=self.dim()].to_vec()
    }

    /// Lipschitz-Killing curvatures `L_j = lambda2^{j/2} L_j^E` of the region
    /// under a field with second spectral moment `lambda2 > 0`.
    pub fn lk_curvatures(&self, lambda2: f64) -> Result<Vec<f64>> {
        ensure_positive("lambda2", lambda2)?;
        let root = lambda2.sqrt();
        let scale = [1.0, root, lambda2, lambda2 * root];
        Ok(self
            .intrinsic_volumes()
            .into_iter()
            .enumerate()
            .map(|(j, v)| scale[j] * v)
            .collect())
    }
}

/// Elementary symmetric functions `[1, e1, e2, e3]` of up to three side
/// lengths; entries beyond the dimension are 0.
///
/// Sides are combined in sorted order so that permuted inputs produce
/// bit-identical outputs.
pub(crate) fn elementary_symmetric(sides: &[f64]) -> [f64; 4] {
    debug_assert!(sides.len() <= 3);
    let mut t = [0.0; 3];
    let n = sides.len();
    t[..n].copy_from_slice(sides);
    t[..n].sort_unstable_by(|a, b| a.partial_cmp(b).expect("sides are finite"));
    let mut e = [0.0; 4];
    e[0] = 1.0;
    match n {
        0 => {}
        1 => e[1] = t[0],
        2 => {
            e[1] = t[0] + t[1];
            e[2] = t[0] * t[1];
        }
        _ => {
            e[1] = t[0] + t[1] + t[2];
            e[2] = t[0] * t[1] + t[0] * t[2] + t[1] * t[2];
            e[3] = t[0] * t[1] * t[2];
        }
    }
    e
}
