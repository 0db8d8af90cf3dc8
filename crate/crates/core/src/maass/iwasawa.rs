//! Points of H³ in Iwasawa coordinates and the action of SL(3,Z).

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// `z = X·Y` with `X` upper unipotent `[[1,x2,x3],[0,1,x1],[0,0,1]]` and
/// `Y = diag(y1 y2, y1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H3Point {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub y1: f64,
    pub y2: f64,
}

/// An integer 3×3 matrix, row-major.
pub type IntMatrix = [[i64; 3]; 3];

pub const IDENTITY: IntMatrix = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

impl H3Point {
    pub fn new(x1: f64, x2: f64, x3: f64, y1: f64, y2: f64) -> Result<Self> {
        let finite = [x1, x2, x3, y1, y2].iter().all(|v| v.is_finite());
        if !finite || !(y1 > 0.0 && y2 > 0.0) {
            return Err(Error::Domain(format!(
                "point ({x1}, {x2}, {x3}, {y1}, {y2}) needs finite entries and y1, y2 > 0"
            )));
        }
        Ok(Self { x1, x2, x3, y1, y2 })
    }

    /// The matrix `X·Y`.
    pub fn matrix(&self) -> [[f64; 3]; 3] {
        [
            [self.y1 * self.y2, self.x2 * self.y1, self.x3],
            [0.0, self.y1, self.x1],
            [0.0, 0.0, 1.0],
        ]
    }
}

impl FromStr for H3Point {
    type Err = Error;

    /// Parses `x1,x2,x3,y1,y2`.
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Domain(format!("bad point '{s}': {e}")))?;
        if v.len() != 5 {
            return Err(Error::Domain(format!("point '{s}' needs five comma-separated numbers")));
        }
        Self::new(v[0], v[1], v[2], v[3], v[4])
    }
}

pub fn determinant(g: &IntMatrix) -> i64 {
    g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut c = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Iwasawa coordinates of `g·z`.
///
/// With `M = g·z`, the Gram matrix `G = M Mᵀ` equals `(XY)(XY)ᵀ` up to a
/// positive scalar, so an upper-triangular `U` with `U Uᵀ = G` is `XY` up to
/// that scalar. `U` is built from the bottom-right corner upwards and
/// normalized so that `U33 = 1`.
pub fn iwasawa_act(g: &IntMatrix, z: &H3Point) -> Result<H3Point> {
    let det = determinant(g);
    if det != 1 {
        return Err(Error::Determinant(det));
    }
    let zm = z.matrix();
    let mut m = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| g[i][k] as f64 * zm[k][j]).sum();
        }
    }
    let mut gram = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            gram[i][j] = (0..3).map(|k| m[i][k] * m[j][k]).sum();
        }
    }
    let pivot = |v: f64| -> Result<f64> {
        if v < 1e-300 {
            Err(Error::NumericalDegeneracy)
        } else {
            Ok(v.sqrt())
        }
    };
    let u33 = pivot(gram[2][2])?;
    let u13 = gram[0][2] / u33;
    let u23 = gram[1][2] / u33;
    let u22 = pivot(gram[1][1] - u23 * u23)?;
    let u12 = (gram[0][1] - u13 * u23) / u22;
    let u11 = pivot(gram[0][0] - u12 * u12 - u13 * u13)?;
    H3Point::new(u23 / u33, u12 / u22, u13 / u33, u22 / u33, u11 / u22)
}

/// Generators accepted in a [`GroupWord`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    S1,
    S2,
    /// `x1 → x1 + 1`.
    T1,
    /// `x2 → x2 + 1`, `x3 → x3 + x1`.
    T2,
    /// `x3 → x3 + 1`.
    T3,
}

impl Generator {
    pub fn matrix(&self) -> IntMatrix {
        match self {
            Generator::S1 => [[1, 0, 0], [0, 0, -1], [0, 1, 0]],
            Generator::S2 => [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
            Generator::T1 => [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
            Generator::T2 => [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
            Generator::T3 => [[1, 0, 1], [0, 1, 0], [0, 0, 1]],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::S1 => "S1",
            Generator::S2 => "S2",
            Generator::T1 => "T1",
            Generator::T2 => "T2",
            Generator::T3 => "T3",
        }
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S1" => Ok(Generator::S1),
            "S2" => Ok(Generator::S2),
            "T1" => Ok(Generator::T1),
            "T2" => Ok(Generator::T2),
            "T3" => Ok(Generator::T3),
            _ => Err(Error::Domain(format!("unknown generator '{s}' (expected S1, S2, T1, T2, T3)"))),
        }
    }
}

/// A product of generators, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupWord(pub Vec<Generator>);

impl GroupWord {
    pub fn matrix(&self) -> IntMatrix {
        self.0.iter().fold(IDENTITY, |acc, g| mat_mul(&acc, &g.matrix()))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for GroupWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>().map(GroupWord)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(Generator::name).collect();
        f.write_str(&names.join(" "))
    }
}
