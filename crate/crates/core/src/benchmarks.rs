//! The classic 23-function continuous test suite (f1–f23).
//!
//! f1–f7 are unimodal, f8–f13 high-dimensional multimodal, f14–f23
//! low-dimensional multimodal. Published minimisers are stored at full
//! precision so the optimum can be checked by direct evaluation.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Identifier of one suite function, `1..=23`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionId(u8);

impl FunctionId {
    pub const COUNT: u8 = 23;

    pub fn new(n: u8) -> Result<Self> {
        if (1..=Self::COUNT).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::Argument(format!("unknown function f{n}")))
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = FunctionId> {
        (1..=Self::COUNT).map(FunctionId)
    }

    pub fn category(self) -> Category {
        match self.0 {
            1..=7 => Category::I,
            8..=13 => Category::II,
            _ => Category::III,
        }
    }

    pub fn fe_limit(self) -> u64 {
        FE_LIMITS[self.0 as usize - 1]
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t
            .strip_prefix('f')
            .or_else(|| t.strip_prefix('F'))
            .unwrap_or(t);
        let n: u8 = digits
            .parse()
            .map_err(|_| Error::Argument(format!("unknown function {t}")))?;
        FunctionId::new(n)
    }
}

/// Parses a function selection such as `f1..f7`, `f1,f5,f9` or `all`.
pub fn parse_function_list(s: &str) -> Result<Vec<FunctionId>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part.eq_ignore_ascii_case("all") {
            out.extend(FunctionId::all());
        } else if let Some((a, b)) = part.split_once("..") {
            let (a, b): (FunctionId, FunctionId) = (a.parse()?, b.parse()?);
            if a > b {
                return Err(Error::Argument(format!("empty function range {part}")));
            }
            out.extend((a.0..=b.0).map(FunctionId));
        } else {
            out.push(part.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::Argument("empty function list".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    /// Unimodal.
    I,
    /// High-dimensional multimodal.
    II,
    /// Low-dimensional multimodal.
    III,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::I, Category::II, Category::III];

    pub fn functions(self) -> impl Iterator<Item = FunctionId> {
        FunctionId::all().filter(move |f| f.category() == self)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::I => "I",
            Category::II => "II",
            Category::III => "III",
        })
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "1" => Ok(Category::I),
            "II" | "2" => Ok(Category::II),
            "III" | "3" => Ok(Category::III),
            other => Err(Error::Argument(format!("unknown category {other}"))),
        }
    }
}

const FE_LIMITS: [u64; 23] = [
    150_000, 150_000, 250_000, 150_000, 150_000, 150_000, 150_000, // f1..f7
    150_000, 250_000, 150_000, 150_000, 150_000, 150_000, // f8..f13
    7_500, 250_000, 1_250, 5_000, 10_000, 4_000, 7_500, 10_000, 10_000, 10_000, // f14..f23
];

/// Descriptor of one suite function.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkFunction {
    pub id: FunctionId,
    pub name: &'static str,
    pub dim: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub category: Category,
    /// Best-known objective value.
    pub known_min: f64,
    /// Published minimiser, when one is known.
    pub argmin: Option<Vec<f64>>,
}

impl BenchmarkFunction {
    pub fn fe_limit(&self) -> u64 {
        self.id.fe_limit()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    /// Objective value at `x`, checking its dimensionality.
    ///
    /// `noise` feeds f7's additive uniform term and is untouched by every
    /// other function.
    pub fn evaluate(&self, x: &[f64], noise: &mut RandomSource) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::Argument(format!(
                "{} expects {} coordinates, got {}",
                self.id,
                self.dim,
                x.len()
            )));
        }
        Ok(self.value(x, noise))
    }

    /// Objective value without the dimension check.
    pub fn value(&self, x: &[f64], noise: &mut RandomSource) -> f64 {
        match self.id.0 {
            1 => sphere(x),
            2 => schwefel_2_22(x),
            3 => schwefel_1_2(x),
            4 => schwefel_2_21(x),
            5 => rosenbrock(x),
            6 => step(x),
            7 => quartic(x) + noise.uniform(),
            8 => schwefel_2_26(x),
            9 => rastrigin(x),
            10 => ackley(x),
            11 => griewank(x),
            12 => penalized_1(x),
            13 => penalized_2(x),
            14 => shekel_foxholes(x),
            15 => kowalik(x),
            16 => six_hump_camel(x),
            17 => branin(x),
            18 => goldstein_price(x),
            19 => hartman(x, &HARTMAN3_A, &HARTMAN3_P),
            20 => hartman(x, &HARTMAN6_A, &HARTMAN6_P),
            21 => shekel(x, 5),
            22 => shekel(x, 7),
            23 => shekel(x, 10),
            _ => unreachable!("FunctionId is validated on construction"),
        }
    }
}

/// Descriptor for one function.
pub fn function(id: FunctionId) -> BenchmarkFunction {
    let n = id.0;
    let (name, dim, lo, hi, known_min, argmin): (_, usize, f64, f64, f64, Option<Vec<f64>>) =
        match n {
            1 => ("sphere", 30, -100.0, 100.0, 0.0, Some(vec![0.0; 30])),
            2 => ("schwefel-2.22", 30, -10.0, 10.0, 0.0, Some(vec![0.0; 30])),
            3 => ("schwefel-1.2", 30, -100.0, 100.0, 0.0, Some(vec![0.0; 30])),
            4 => ("schwefel-2.21", 30, -100.0, 100.0, 0.0, Some(vec![0.0; 30])),
            5 => ("rosenbrock", 30, -30.0, 30.0, 0.0, Some(vec![1.0; 30])),
            6 => ("step", 30, -100.0, 100.0, 0.0, Some(vec![0.0; 30])),
            // The noise term is non-negative, so the noiseless optimum is a lower bound.
            7 => ("quartic-noise", 30, -1.28, 1.28, 0.0, None),
            8 => (
                "schwefel-2.26",
                30,
                -500.0,
                500.0,
                -12_569.486_618_173_01,
                Some(vec![420.968_746_359_982_05; 30]),
            ),
            9 => ("rastrigin", 30, -5.12, 5.12, 0.0, Some(vec![0.0; 30])),
            10 => ("ackley", 30, -32.0, 32.0, 0.0, Some(vec![0.0; 30])),
            11 => ("griewank", 30, -600.0, 600.0, 0.0, Some(vec![0.0; 30])),
            12 => ("penalized-1", 30, -50.0, 50.0, 0.0, Some(vec![-1.0; 30])),
            13 => ("penalized-2", 30, -50.0, 50.0, 0.0, Some(vec![1.0; 30])),
            14 => (
                "shekel-foxholes",
                2,
                -65.536,
                65.536,
                0.998_003_837_794_449_3,
                Some(vec![-31.978_334_766_992_287, -31.978_338_003_301_367]),
            ),
            15 => (
                "kowalik",
                4,
                -5.0,
                5.0,
                3.074_859_878_056_056e-4,
                Some(vec![
                    0.192_833_453_042_751_23,
                    0.190_836_240_275_969_3,
                    0.123_117_299_076_027_14,
                    0.135_765_990_339_841_96,
                ]),
            ),
            16 => (
                "six-hump-camel",
                2,
                -5.0,
                5.0,
                -1.031_628_453_489_877_6,
                Some(vec![0.089_842_016_529_270_98, -0.712_656_401_380_720_2]),
            ),
            17 => (
                "branin",
                2,
                f64::NAN, // per-coordinate bounds below
                f64::NAN,
                0.397_887_357_729_738_16,
                Some(vec![PI, 2.275]),
            ),
            18 => ("goldstein-price", 2, -2.0, 2.0, 3.0, Some(vec![0.0, -1.0])),
            19 => (
                "hartman-3",
                3,
                0.0,
                1.0,
                -3.862_782_147_820_755,
                Some(vec![
                    0.114_614_342_030_829_51,
                    0.555_648_850_790_538_4,
                    0.852_546_953_846_025_1,
                ]),
            ),
            20 => (
                "hartman-6",
                6,
                0.0,
                1.0,
                -3.322_368_011_415_512_5,
                Some(vec![
                    0.201_689_509_234_095_84,
                    0.150_010_688_764_179_22,
                    0.476_873_972_432_962_2,
                    0.275_332_428_312_954,
                    0.311_651_611_575_136_7,
                    0.657_300_529_380_464_1,
                ]),
            ),
            21 => (
                "shekel-5",
                4,
                0.0,
                10.0,
                -10.153_199_679_058_229,
                Some(vec![
                    4.000_037_152_376_549,
                    4.000_133_278_657_566,
                    4.000_037_151_057_555,
                    4.000_133_277_090_425,
                ]),
            ),
            22 => (
                "shekel-7",
                4,
                0.0,
                10.0,
                -10.402_940_566_818_662,
                Some(vec![
                    4.000_572_914_277_084,
                    4.000_689_366_040_889,
                    3.999_489_710_793_844_7,
                    3.999_606_160_006_792_3,
                ]),
            ),
            23 => (
                "shekel-10",
                4,
                0.0,
                10.0,
                -10.536_409_816_692_046,
                Some(vec![
                    4.000_746_533_201_553,
                    4.000_592_934_538_832,
                    3.999_663_397_220_255_8,
                    3.999_509_801_285_225_5,
                ]),
            ),
            _ => unreachable!("FunctionId is validated on construction"),
        };
    let (lower, upper) = if n == 17 {
        (vec![-5.0, 0.0], vec![10.0, 15.0])
    } else {
        (vec![lo; dim], vec![hi; dim])
    };
    BenchmarkFunction {
        id,
        name,
        dim,
        lower,
        upper,
        category: id.category(),
        known_min,
        argmin,
    }
}

/// All 23 descriptors in order f1..f23.
pub fn suite() -> Vec<BenchmarkFunction> {
    FunctionId::all().map(function).collect()
}

/// Dimension-checked evaluation by id.
pub fn evaluate(id: FunctionId, x: &[f64], noise: &mut RandomSource) -> Result<f64> {
    function(id).evaluate(x, noise)
}

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn schwefel_2_22(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v.abs()).sum();
    let prod: f64 = x.iter().map(|v| v.abs()).product();
    sum + prod
}

fn schwefel_1_2(x: &[f64]) -> f64 {
    let mut partial = 0.0;
    let mut total = 0.0;
    for v in x {
        partial += v;
        total += partial * partial;
    }
    total
}

fn schwefel_2_21(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

fn step(x: &[f64]) -> f64 {
    x.iter().map(|v| (v + 0.5).floor().powi(2)).sum()
}

fn quartic(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v.powi(4))
        .sum()
}

fn schwefel_2_26(x: &[f64]) -> f64 {
    x.iter().map(|v| -v * v.abs().sqrt().sin()).sum()
}

fn rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
        .sum()
}

fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let cs: f64 = x.iter().map(|v| (2.0 * PI * v).cos()).sum();
    -20.0 * (-0.2 * (sq / n).sqrt()).exp() - (cs / n).exp() + 20.0 + E
}

fn griewank(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sq / 4000.0 - prod + 1.0
}

fn penalty(v: f64, a: f64, k: f64, m: i32) -> f64 {
    if v > a {
        k * (v - a).powi(m)
    } else if v < -a {
        k * (-v - a).powi(m)
    } else {
        0.0
    }
}

fn penalized_1(x: &[f64]) -> f64 {
    let n = x.len();
    let y: Vec<f64> = x.iter().map(|v| 1.0 + (v + 1.0) / 4.0).collect();
    let mut s = 10.0 * (PI * y[0]).sin().powi(2);
    for i in 0..n - 1 {
        s += (y[i] - 1.0).powi(2) * (1.0 + 10.0 * (PI * y[i + 1]).sin().powi(2));
    }
    s += (y[n - 1] - 1.0).powi(2);
    let p: f64 = x.iter().map(|v| penalty(*v, 10.0, 100.0, 4)).sum();
    PI / n as f64 * s + p
}

fn penalized_2(x: &[f64]) -> f64 {
    let n = x.len();
    let mut s = (3.0 * PI * x[0]).sin().powi(2);
    for i in 0..n - 1 {
        s += (x[i] - 1.0).powi(2) * (1.0 + (3.0 * PI * x[i + 1]).sin().powi(2));
    }
    s += (x[n - 1] - 1.0).powi(2) * (1.0 + (2.0 * PI * x[n - 1]).sin().powi(2));
    let p: f64 = x.iter().map(|v| penalty(*v, 5.0, 100.0, 4)).sum();
    0.1 * s + p
}

const FOXHOLE_GRID: [f64; 5] = [-32.0, -16.0, 0.0, 16.0, 32.0];

fn shekel_foxholes(x: &[f64]) -> f64 {
    let mut s = 1.0 / 500.0;
    for j in 0..25 {
        let a1 = FOXHOLE_GRID[j % 5];
        let a2 = FOXHOLE_GRID[j / 5];
        s += 1.0 / ((j + 1) as f64 + (x[0] - a1).powi(6) + (x[1] - a2).powi(6));
    }
    1.0 / s
}

const KOWALIK_A: [f64; 11] = [
    0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
];
const KOWALIK_B_INV: [f64; 11] = [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0];

fn kowalik(x: &[f64]) -> f64 {
    KOWALIK_A
        .iter()
        .zip(KOWALIK_B_INV)
        .map(|(a, b_inv)| {
            let b = 1.0 / b_inv;
            let model = x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
            (a - model).powi(2)
        })
        .sum()
}

fn six_hump_camel(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    4.0 * a * a - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b * b + 4.0 * b.powi(4)
}

fn branin(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (b - 5.1 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0).powi(2)
        + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos()
        + 10.0
}

fn goldstein_price(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let first = 1.0
        + (a + b + 1.0).powi(2)
            * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    let second = 30.0
        + (2.0 * a - 3.0 * b).powi(2)
            * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    first * second
}

const HARTMAN_C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];

const HARTMAN3_A: [[f64; 3]; 4] = [
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
];
const HARTMAN3_P: [[f64; 3]; 4] = [
    [0.3689, 0.1170, 0.2673],
    [0.4699, 0.4387, 0.7470],
    [0.1091, 0.8732, 0.5547],
    [0.038150, 0.5743, 0.8828],
];

const HARTMAN6_A: [[f64; 6]; 4] = [
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
];
const HARTMAN6_P: [[f64; 6]; 4] = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
];

fn hartman<const D: usize>(x: &[f64], a: &[[f64; D]; 4], p: &[[f64; D]; 4]) -> f64 {
    -(0..4)
        .map(|i| {
            let inner: f64 = (0..D).map(|j| a[i][j] * (x[j] - p[i][j]).powi(2)).sum();
            HARTMAN_C[i] * (-inner).exp()
        })
        .sum::<f64>()
}

const SHEKEL_A: [[f64; 4]; 10] = [
    [4.0, 4.0, 4.0, 4.0],
    [1.0, 1.0, 1.0, 1.0],
    [8.0, 8.0, 8.0, 8.0],
    [6.0, 6.0, 6.0, 6.0],
    [3.0, 7.0, 3.0, 7.0],
    [2.0, 9.0, 2.0, 9.0],
    [5.0, 5.0, 3.0, 3.0],
    [8.0, 1.0, 8.0, 1.0],
    [6.0, 2.0, 6.0, 2.0],
    [7.0, 3.6, 7.0, 3.6],
];
const SHEKEL_C: [f64; 10] = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5];

fn shekel(x: &[f64], m: usize) -> f64 {
    -(0..m)
        .map(|i| {
            let d: f64 = (0..4).map(|j| (x[j] - SHEKEL_A[i][j]).powi(2)).sum();
            1.0 / (d + SHEKEL_C[i])
        })
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: u8) -> FunctionId {
        FunctionId::new(n).unwrap()
    }

    fn eval(n: u8, x: &[f64]) -> f64 {
        evaluate(id(n), x, &mut RandomSource::new(0)).unwrap()
    }

    #[test]
    fn canonical_minimisers() {
        assert_eq!(eval(1, &[0.0; 30]), 0.0);
        assert_eq!(eval(5, &[1.0; 30]), 0.0);
        assert_eq!(eval(9, &[0.0; 30]), 0.0);
        let f8 = eval(8, &[420.9687; 30]);
        assert!((f8 - -12_569.5).abs() < 0.05, "{f8}");
        assert!(f8 <= -12_569.0);
        let f16 = eval(16, &function(id(16)).argmin.unwrap());
        assert!((f16 - -1.0316).abs() < 5e-5);
    }

    #[test]
    fn categories_and_limits() {
        let s = suite();
        assert_eq!(s.len(), 23);
        assert_eq!(s[5].category, Category::I);
        assert_eq!(s[7].category, Category::II);
        assert_eq!(s[13].category, Category::III);
        assert_eq!(id(1).fe_limit(), 150_000);
        assert_eq!(id(3).fe_limit(), 250_000);
        assert_eq!(id(15).fe_limit(), 250_000);
        assert_eq!(id(16).fe_limit(), 1_250);
        for (i, f) in s.iter().enumerate() {
            assert_eq!(f.id.number() as usize, i + 1);
        }
    }

    #[test]
    fn wrong_dimension_rejected() {
        let err = evaluate(id(1), &[0.0; 3], &mut RandomSource::new(0)).unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
    }

    #[test]
    fn function_ids_parse() {
        assert_eq!("f12".parse::<FunctionId>().unwrap(), id(12));
        assert!("f0".parse::<FunctionId>().is_err());
        assert!("f24".parse::<FunctionId>().is_err());
        let list = parse_function_list("f1..f7").unwrap();
        assert_eq!(list.len(), 7);
        assert_eq!(parse_function_list("f9,f2,f9").unwrap(), vec![id(2), id(9)]);
        assert_eq!(parse_function_list("all").unwrap().len(), 23);
        assert!(parse_function_list("f7..f1").is_err());
    }

    #[test]
    fn step_has_plateaus() {
        assert_eq!(eval(6, &[0.49; 30]), 0.0);
        assert_eq!(eval(6, &[-0.5; 30]), 0.0);
        assert_eq!(eval(6, &[0.5; 30]), 30.0);
    }

    #[test]
    fn noisy_quartic_replays_under_seed() {
        let f = function(id(7));
        let x = vec![0.3; 30];
        let a = f.evaluate(&x, &mut RandomSource::new(9)).unwrap();
        let b = f.evaluate(&x, &mut RandomSource::new(9)).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        let clean = quartic(&x);
        assert!(a >= clean && a < clean + 1.0);
    }
}
