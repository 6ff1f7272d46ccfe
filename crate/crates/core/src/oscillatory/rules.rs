use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

// 21-point Kronrod abscissae and weights with the embedded 10-point Gauss
// weights (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// G10K21 on `[a, b]`; returns the Kronrod value and `|K21 − G10|`.
pub(crate) fn gauss_kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for j in 0..10 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kronrod += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    ((kronrod * h), ((kronrod - gauss) * h).norm())
}

/// Chebyshev–Lobatto points `cos(jπ/N)` and the spectral differentiation matrix.
#[derive(Debug, Clone)]
pub(crate) struct ChebyshevGrid {
    pub points: Vec<f64>,
    pub diff: DMatrix<f64>,
}

impl ChebyshevGrid {
    pub fn new(order: usize) -> Self {
        let n = order;
        let points: Vec<f64> = (0..=n).map(|j| (std::f64::consts::PI * j as f64 / n as f64).cos()).collect();
        let weight = |i: usize| {
            let c = if i == 0 || i == n { 2.0 } else { 1.0 };
            if i % 2 == 0 { c } else { -c }
        };
        let mut diff = DMatrix::<f64>::zeros(n + 1, n + 1);
        for i in 0..=n {
            let mut row = 0.0;
            for j in 0..=n {
                if i != j {
                    let d = weight(i) / weight(j) / (points[i] - points[j]);
                    diff[(i, j)] = d;
                    row += d;
                }
            }
            // negative-sum trick keeps D·1 = 0 to rounding
            diff[(i, i)] = -row;
        }
        ChebyshevGrid { points, diff }
    }
}

/// Levin collocation on one panel: solves `p' + iΦ' p = f` at the grid
/// nodes and returns `p(b) e^{iΦ(b)} − p(a) e^{iΦ(a)}`.
pub(crate) fn levin<F, P, D>(grid: &ChebyshevGrid, f: &F, phase: &P, dphase: &D, a: f64, b: f64) -> Option<Complex64>
where
    F: Fn(f64) -> Complex64,
    P: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let n = grid.points.len();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let nodes: Vec<f64> = grid.points.iter().map(|&x| mid + half * x).collect();
    let mut matrix = DMatrix::<Complex64>::from_fn(n, n, |i, j| Complex64::new(grid.diff[(i, j)] / half, 0.0));
    for (i, &x) in nodes.iter().enumerate() {
        matrix[(i, i)] += Complex64::new(0.0, dphase(x));
    }
    let rhs = DVector::<Complex64>::from_iterator(n, nodes.iter().map(|&x| f(x)));
    let p = matrix.lu().solve(&rhs)?;
    // node 0 is x = 1 (right end), node n−1 is x = −1
    let right = p[0] * Complex64::from_polar(1.0, phase(b));
    let left = p[n - 1] * Complex64::from_polar(1.0, phase(a));
    let value = right - left;
    value.is_finite().then_some(value)
}
