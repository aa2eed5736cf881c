use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::{Error, Grid, Result, RngStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Cell {
    Vacant,
    GroupA,
    GroupB,
}

impl Cell {
    pub fn is_occupied(self) -> bool {
        self != Cell::Vacant
    }
}

/// Row-major cell contents of a Schelling world, row 0 at the top.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchellingState {
    width: usize,
    height: usize,
    cells: Vec<Cell>,
    tolerance: f64,
    step: usize,
}

impl SchellingState {
    pub fn new(width: usize, height: usize, cells: Vec<Cell>, tolerance: f64) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyInput("schelling world"));
        }
        if cells.len() != width * height {
            return Err(Error::param("cells", format!("expected {} cells, got {}", width * height, cells.len())));
        }
        if !(0.0..=1.0).contains(&tolerance) {
            return Err(Error::param("tolerance", "must lie in [0, 1]"));
        }
        Ok(SchellingState { width, height, cells, tolerance, step: 0 })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn step(&self) -> usize {
        self.step
    }

    /// Counts of (vacant, group A, group B).
    pub fn counts(&self) -> (usize, usize, usize) {
        self.cells.iter().fold((0, 0, 0), |(v, a, b), c| match c {
            Cell::Vacant => (v + 1, a, b),
            Cell::GroupA => (v, a + 1, b),
            Cell::GroupB => (v, a, b + 1),
        })
    }

    /// Moore-8 neighbors, non-toroidal.
    pub fn neighbors(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let (r, c) = ((index / self.width) as isize, (index % self.width) as isize);
        let (w, h) = (self.width as isize, self.height as isize);
        (-1..=1isize)
            .flat_map(move |dr| (-1..=1isize).map(move |dc| (r + dr, c + dc)))
            .filter(move |&(rr, cc)| (rr, cc) != (r, c) && rr >= 0 && cc >= 0 && rr < h && cc < w)
            .map(move |(rr, cc)| (rr * w + cc) as usize)
    }

    /// (same-group, occupied) neighbor counts of an occupied cell.
    fn neighbor_counts(&self, index: usize) -> (usize, usize) {
        let me = self.cells[index];
        self.neighbors(index).fold((0, 0), |(same, occ), j| match self.cells[j] {
            Cell::Vacant => (same, occ),
            c => (same + usize::from(c == me), occ + 1),
        })
    }

    pub fn is_satisfied(&self, index: usize) -> bool {
        if !self.cells[index].is_occupied() {
            return true;
        }
        let (same, occ) = self.neighbor_counts(index);
        occ == 0 || same as f64 >= self.tolerance * occ as f64
    }

    /// Indices of unsatisfied agents in row-major order.
    pub fn unsatisfied(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| !self.is_satisfied(i)).collect()
    }
}

/// Occupies the `⌈occupied_fraction·n⌉` highest-valued cells of `grid`
/// (ties by row-major index); each occupant is group A with probability
/// `mix_ratio`.
pub fn init_schelling(
    grid: &Grid,
    occupied_fraction: f64,
    mix_ratio: f64,
    tolerance: f64,
    rng: &mut RngStream,
) -> Result<SchellingState> {
    if !(occupied_fraction > 0.0 && occupied_fraction <= 1.0) {
        return Err(Error::param("occupiedFraction", "must lie in (0, 1]"));
    }
    if !(0.0..=1.0).contains(&mix_ratio) {
        return Err(Error::param("mixRatio", "must lie in [0, 1]"));
    }
    let n = grid.len();
    let k = ((occupied_fraction * n as f64).ceil() as usize).min(n);
    let values = grid.values();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    let mut occupied = vec![false; n];
    for &i in &order[..k] {
        occupied[i] = true;
    }
    let cells = occupied
        .into_iter()
        .map(|o| match o {
            false => Cell::Vacant,
            true if rng.bernoulli(mix_ratio) => Cell::GroupA,
            true => Cell::GroupB,
        })
        .collect();
    SchellingState::new(grid.width(), grid.height(), cells, tolerance)
}

fn step_in_place(state: &mut SchellingState, rng: &mut RngStream) -> Result<bool> {
    let unsatisfied = state.unsatisfied();
    state.step += 1;
    if unsatisfied.is_empty() {
        return Ok(false);
    }
    let vacant: Vec<usize> = (0..state.cells.len()).filter(|&i| !state.cells[i].is_occupied()).collect();
    if vacant.is_empty() {
        return Err(Error::NoVacancy);
    }
    let from = unsatisfied[rng.below(unsatisfied.len())];
    let to = vacant[rng.below(vacant.len())];
    state.cells.swap(from, to);
    Ok(true)
}

/// One asynchronous update: a uniformly chosen unsatisfied agent moves to a
/// uniformly chosen vacant cell. Without unsatisfied agents only the step
/// counter advances.
pub fn step_schelling(state: &SchellingState, rng: &mut RngStream) -> Result<SchellingState> {
    let mut next = state.clone();
    step_in_place(&mut next, rng)?;
    Ok(next)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchellingRun {
    pub state: SchellingState,
    /// `(step, segregation index)` at step 0, every 100 steps, and at the end.
    pub trajectory: Vec<(usize, f64)>,
}

/// Steps until every agent is satisfied or `max_steps` updates were made.
pub fn run_schelling(state: SchellingState, max_steps: usize, rng: &mut RngStream) -> Result<SchellingRun> {
    let mut state = state;
    let start = state.step;
    let mut trajectory = vec![(state.step, segregation_index(&state))];
    while state.step - start < max_steps {
        if state.unsatisfied().is_empty() {
            break;
        }
        step_in_place(&mut state, rng)?;
        if (state.step - start) % 100 == 0 {
            trajectory.push((state.step, segregation_index(&state)));
        }
    }
    if trajectory.last().map(|t| t.0) != Some(state.step) {
        trajectory.push((state.step, segregation_index(&state)));
    }
    Ok(SchellingRun { state, trajectory })
}

/// Mean share of same-group neighbors over agents with at least one occupied
/// neighbor; 1 when no agent has one.
pub fn segregation_index(state: &SchellingState) -> f64 {
    let (mut total, mut counted) = (0.0, 0usize);
    for i in 0..state.cells.len() {
        if !state.cells[i].is_occupied() {
            continue;
        }
        let (same, occ) = state.neighbor_counts(i);
        if occ > 0 {
            total += same as f64 / occ as f64;
            counted += 1;
        }
    }
    if counted == 0 {
        1.0
    } else {
        total / counted as f64
    }
}

/// `step,segregationIndex` CSV.
pub fn trajectory_csv(trajectory: &[(usize, f64)]) -> String {
    let mut out = String::from("step,segregationIndex\n");
    for (step, s) in trajectory {
        writeln!(out, "{step},{s}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Cell::{GroupA as A, GroupB as B, Vacant as V};

    #[test]
    fn checkerboard_index() {
        let cells = (0..16).map(|i| if (i / 4 + i % 4) % 2 == 0 { A } else { B }).collect();
        let s = SchellingState::new(4, 4, cells, 0.5).unwrap();
        // interior 4/8, edge 2/5, corner 1/3
        let expected = (4.0 * 0.5 + 8.0 * 0.4 + 4.0 / 3.0) / 16.0;
        assert!((segregation_index(&s) - expected).abs() < 1e-15);
        let interior: Vec<usize> = [5, 6, 9, 10].into();
        for i in interior {
            assert_eq!(s.neighbor_counts(i), (4, 8));
        }
    }

    #[test]
    fn single_group_full() {
        let s = SchellingState::new(3, 3, vec![A; 9], 0.9).unwrap();
        assert_eq!(segregation_index(&s), 1.0);
        assert!(s.unsatisfied().is_empty());
    }

    #[test]
    fn lone_agent_is_satisfied() {
        let mut cells = vec![V; 9];
        cells[4] = B;
        let s = SchellingState::new(3, 3, cells, 0.5).unwrap();
        assert!(s.is_satisfied(4));
        assert_eq!(segregation_index(&s), 1.0);
    }

    #[test]
    fn no_vacancy() {
        let s = SchellingState::new(2, 1, vec![A, B], 0.5).unwrap();
        assert!(matches!(step_schelling(&s, &mut RngStream::new(1)), Err(Error::NoVacancy)));
    }

    #[test]
    fn zero_tolerance_is_identity() {
        let g = Grid::filled(10, 10, 1.0);
        let s = init_schelling(&g, 0.8, 0.5, 0.0, &mut RngStream::new(3)).unwrap();
        let run = run_schelling(s.clone(), 1000, &mut RngStream::new(4)).unwrap();
        assert_eq!(run.state, s);
        assert_eq!(run.trajectory.len(), 1);
    }

    #[test]
    fn init_full_group_a() {
        let g = Grid::filled(4, 4, 2.0);
        let s = init_schelling(&g, 1.0, 1.0, 0.5, &mut RngStream::new(0)).unwrap();
        assert_eq!(s.counts(), (0, 16, 0));
        let half = init_schelling(&Grid::filled(5, 5, 1.0), 0.5, 0.5, 0.5, &mut RngStream::new(0)).unwrap();
        assert_eq!(half.counts().0, 25 - 13);
    }

    #[test]
    fn trajectory_format() {
        assert_eq!(trajectory_csv(&[(0, 0.5), (100, 0.75)]), "step,segregationIndex\n0,0.5\n100,0.75\n");
    }
}
