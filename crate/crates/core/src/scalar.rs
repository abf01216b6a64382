use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the simulator and matrix code are generic over.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Squared-norm ratio below which a measurement branch counts as zero.
    fn branch_cutoff() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap()
    }
}

impl Real for f32 {
    fn branch_cutoff() -> Self {
        let e = 16.0 * f32::EPSILON;
        e * e
    }
}

impl Real for f64 {
    fn branch_cutoff() -> Self {
        1e-24
    }
}
