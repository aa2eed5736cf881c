use crate::{Grid, IndicatorRecord};

/// Mesoscale urban-form summary of a density grid.
///
/// With `p_i = x_i / Σx` and cell centers `c_i`:
/// * `centroid = Σ p_i·c_i`, `dispersion = √(Σ p_i‖c_i − centroid‖²)`;
/// * `moran`: Moran's I with inverse-distance weights `1/d_ij`, no row
///   standardization;
/// * `entropy = −Σ p_i ln p_i / ln n`;
/// * `rank_size_slope`: OLS slope of `ln x` on `ln rank` over positive cells;
/// * `avg_distance = Σ_{i≠j} p_i p_j d_ij / diagonal`.
///
/// Degenerate conventions: a constant grid has `moran = 0`; an empty grid
/// (zero mass) has every distribution indicator at 0; fewer than two
/// positive cells give `rank_size_slope = 0`; a single-cell grid has
/// `entropy = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorphologyRecord {
    pub mass: f64,
    pub centroid_x: f64,
    pub centroid_y: f64,
    pub dispersion: f64,
    pub moran: f64,
    pub entropy: f64,
    pub rank_size_slope: f64,
    pub avg_distance: f64,
}

impl MorphologyRecord {
    pub const NAMES: [&'static str; 8] =
        ["mass", "centroidX", "centroidY", "dispersion", "moran", "entropy", "rankSizeSlope", "avgDistance"];

    pub fn to_record(&self) -> IndicatorRecord {
        let values = [
            self.mass,
            self.centroid_x,
            self.centroid_y,
            self.dispersion,
            self.moran,
            self.entropy,
            self.rank_size_slope,
            self.avg_distance,
        ];
        Self::NAMES.iter().zip(values).map(|(n, v)| (n.to_string(), v)).collect()
    }
}

/// Distances between cell centers indexed by `(|Δrow|, |Δcol|)`.
struct OffsetDistances {
    width: usize,
    table: Vec<f64>,
}

impl OffsetDistances {
    fn new(grid: &Grid) -> Self {
        let (w, h, s) = (grid.width(), grid.height(), grid.cell_size());
        let mut table = vec![0.0; w * h];
        for dr in 0..h {
            for dc in 0..w {
                table[dr * w + dc] = s * (dr as f64).hypot(dc as f64);
            }
        }
        OffsetDistances { width: w, table }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> f64 {
        let (ri, ci) = (i / self.width, i % self.width);
        let (rj, cj) = (j / self.width, j % self.width);
        self.table[ri.abs_diff(rj) * self.width + ci.abs_diff(cj)]
    }
}

pub fn grid_morphology(grid: &Grid) -> MorphologyRecord {
    let x = grid.values();
    let n = x.len();
    let mass: f64 = x.iter().sum();
    let mut rec = MorphologyRecord {
        mass,
        centroid_x: 0.0,
        centroid_y: 0.0,
        dispersion: 0.0,
        moran: 0.0,
        entropy: 0.0,
        rank_size_slope: 0.0,
        avg_distance: 0.0,
    };
    if mass <= 0.0 {
        return rec;
    }
    let p: Vec<f64> = x.iter().map(|v| v / mass).collect();
    let centers: Vec<_> = (0..n).map(|i| grid.cell_center(i)).collect();
    for (pi, c) in p.iter().zip(&centers) {
        rec.centroid_x += pi * c.x;
        rec.centroid_y += pi * c.y;
    }
    let centroid = crate::Point::new(rec.centroid_x, rec.centroid_y);
    rec.dispersion = p.iter().zip(&centers).map(|(pi, c)| pi * c.distance_sq(centroid)).sum::<f64>().sqrt();
    if n > 1 {
        let h: f64 = p.iter().filter(|v| **v > 0.0).map(|v| -v * v.ln()).sum();
        rec.entropy = (h / (n as f64).ln()).clamp(0.0, 1.0);
    }
    rec.rank_size_slope = rank_size_slope(x);

    let dist = OffsetDistances::new(grid);
    let mean = mass / n as f64;
    let z: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let denom: f64 = z.iter().map(|v| v * v).sum();
    let (mut cross, mut s0, mut pair_distance) = (0.0, 0.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let d = dist.get(i, j);
            let w = 1.0 / d;
            cross += w * z[i] * z[j];
            s0 += w;
            pair_distance += p[i] * p[j] * d;
        }
    }
    // the i<j sums are half of the ordered-pair sums; the factor cancels in moran
    if denom > 0.0 && s0 > 0.0 {
        rec.moran = n as f64 / s0 * cross / denom;
    }
    rec.avg_distance = 2.0 * pair_distance / grid.diagonal();
    rec
}

/// OLS slope of `ln(value)` against `ln(rank)` over strictly positive values
/// sorted in decreasing order; 0 with fewer than two positive values.
pub fn rank_size_slope(values: &[f64]) -> f64 {
    let mut pos: Vec<f64> = values.iter().copied().filter(|v| *v > 0.0).collect();
    if pos.len() < 2 {
        return 0.0;
    }
    pos.sort_by(|a, b| b.total_cmp(a));
    let xs: Vec<f64> = (1..=pos.len()).map(|r| (r as f64).ln()).collect();
    let ys: Vec<f64> = pos.iter().map(|v| v.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
