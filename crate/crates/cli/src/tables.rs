use convball_core::{ContinuityConstants, Result};

/// Published radii `ρ₁, ρ₂, ρ₃, ρ₄, ρ` for one worked example.
#[derive(Debug, Clone)]
pub struct TableSpec {
    pub id: u8,
    pub title: &'static str,
    pub expected: [f64; 5],
    /// Radii of a comparison method as quoted alongside; never computed here.
    pub quoted: Option<Quoted>,
    constants: fn() -> Result<ContinuityConstants>,
}

#[derive(Debug, Clone)]
pub struct Quoted {
    pub method: &'static str,
    pub values: [Option<f64>; 5],
}

impl TableSpec {
    pub fn constants(&self) -> Result<ContinuityConstants> {
        (self.constants)()
    }
}

pub const LABELS: [&str; 5] = ["rho1", "rho2", "rho3", "rho4", "rho"];
pub const SYMBOLS: [&str; 5] = ["ρ₁", "ρ₂", "ρ₃", "ρ₄", "ρ"];

/// `(1/8)((5/2)√2 + 1)`, the Hammerstein example's constant.
pub fn hammerstein_constant() -> f64 {
    (2.5 * std::f64::consts::SQRT_2 + 1.0) / 8.0
}

pub fn all() -> [TableSpec; 3] {
    [
        TableSpec {
            id: 1,
            title: "x³log(x²) + x⁵ − x⁴ on [−1/2, 5/2], Lipschitz ψ₀ = ψ = 96.6628",
            expected: [0.00295578, 0.00246894, 0.00217353, 0.00208131, 0.00208131],
            quoted: Some(Quoted {
                method: "CHMT (θ = −2)",
                values: [Some(0.006689), Some(0.005750), Some(0.003001), Some(0.001943), Some(0.001943)],
            }),
            constants: || ContinuityConstants::lipschitz(96.6628, 96.6628),
        },
        TableSpec {
            id: 2,
            title: "e^(−x) − 1 + x/5, Hoelder q = 1, κ₀ = 0.0608658, κ = 0.094888",
            expected: [4.04772, 2.99797, 2.58569, 2.45972, 2.45972],
            quoted: Some(Quoted {
                method: "KFS",
                values: [Some(9.23282), Some(2.40532), Some(1.11454), None, Some(1.11454)],
            }),
            constants: || ContinuityConstants::hoelder(0.0608658, 0.094888, 1.0),
        },
        TableSpec {
            id: 3,
            title: "Hammerstein equation with Green's kernel, Hoelder q = 1, κ₀ = κ = (5√2/2 + 1)/8",
            expected: [0.503957, 0.420951, 0.378541, 0.363397, 0.363397],
            quoted: None,
            constants: || ContinuityConstants::hoelder(hammerstein_constant(), hammerstein_constant(), 1.0),
        },
    ]
}
