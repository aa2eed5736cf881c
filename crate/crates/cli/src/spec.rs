//! Declarative generator, perturbation and model descriptions.

use serde::{Deserialize, Serialize};
use spatialgen::gridgen::{
    generate_blocks, generate_kernel_mixture, generate_percolation, generate_reaction_diffusion, BlocksParams,
    KernelMixtureParams, PercolationParams, ReactionDiffusionParams,
};
use spatialgen::models::{init_schelling, run_schelling, segregation_index};
use spatialgen::netgen::{
    generate_city_system, generate_cost_benefit_network, generate_gravity_network, generate_random_planar,
    generate_slime_mould, generate_tree_network, CitySystemParams, CostBenefitParams, GravityParams, SlimeMouldParams,
};
use spatialgen::perturb::{
    delete_links, delete_nodes, jitter_nodes, perturb_grid_noise, perturb_grid_poisson, DeletionStrategy,
};
use spatialgen::pointgen::{sample_homogeneous_poisson, sample_inhomogeneous_poisson};
use spatialgen::{Grid, Node, PointSet, Result, RngStream, SpatialNetwork, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArtifactKind {
    Grid,
    Network,
    Points,
}

impl ArtifactKind {
    pub fn name(self) -> &'static str {
        match self {
            ArtifactKind::Grid => "grid",
            ArtifactKind::Network => "network",
            ArtifactKind::Points => "points",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Grid(Grid),
    Network(SpatialNetwork),
    Points(PointSet),
}

impl Artifact {
    pub fn kind(&self) -> ArtifactKind {
        match self {
            Artifact::Grid(_) => ArtifactKind::Grid,
            Artifact::Network(_) => ArtifactKind::Network,
            Artifact::Points(_) => ArtifactKind::Points,
        }
    }
}

fn unit_window() -> Window {
    Window::unit()
}

fn default_value() -> f64 {
    1.0
}

fn checked(w: &Window) -> Result<Window> {
    Window::new(w.xmin, w.ymin, w.xmax, w.ymax)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UniformGridSpec {
    pub size: usize,
    #[serde(default = "default_value")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TreeSpec {
    pub nodes: usize,
    #[serde(default = "unit_window")]
    pub window: Window,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RandomPlanarSpec {
    pub nodes: usize,
    pub keep_probability: f64,
    #[serde(default = "unit_window")]
    pub window: Window,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GravitySpec {
    pub nodes: usize,
    #[serde(default = "unit_window")]
    pub window: Window,
    #[serde(flatten)]
    pub params: GravityParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CostBenefitSpec {
    pub nodes: usize,
    #[serde(default = "unit_window")]
    pub window: Window,
    #[serde(flatten)]
    pub params: CostBenefitParams,
}

/// Slime mould grown on a random planar substrate with `terminals` terminal
/// nodes drawn without replacement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SlimeMouldSpec {
    pub nodes: usize,
    pub keep_probability: f64,
    #[serde(default = "unit_window")]
    pub window: Window,
    pub terminals: usize,
    pub iterations: usize,
    pub flow_amplification: f64,
    pub decay: f64,
    pub time_step: f64,
    pub input_flow: f64,
    pub keep_threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CitySpec {
    #[serde(default = "unit_window")]
    pub window: Window,
    #[serde(flatten)]
    pub params: CitySystemParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HomogeneousPoissonSpec {
    pub lambda: f64,
    #[serde(default = "unit_window")]
    pub window: Window,
}

/// Inhomogeneous Poisson points whose intensity is a kernel-mixture grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InhomogeneousPoissonSpec {
    #[serde(flatten)]
    pub intensity: KernelMixtureParams,
}

/// One generator and its parameters, tagged by `type`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum GeneratorSpec {
    ReactionDiffusion(ReactionDiffusionParams),
    KernelMixture(KernelMixtureParams),
    Percolation(PercolationParams),
    Blocks(BlocksParams),
    UniformGrid(UniformGridSpec),
    TreeNetwork(TreeSpec),
    RandomPlanar(RandomPlanarSpec),
    Gravity(GravitySpec),
    CostBenefit(CostBenefitSpec),
    SlimeMould(SlimeMouldSpec),
    CitySystem(CitySpec),
    HomogeneousPoisson(HomogeneousPoissonSpec),
    InhomogeneousPoisson(InhomogeneousPoissonSpec),
}

/// Positions uniform in the window, weights uniform in (0, 1].
fn weighted_nodes(n: usize, window: &Window, rng: &mut RngStream) -> Vec<Node> {
    (0..n)
        .map(|i| {
            let p = window.sample(rng);
            Node::weighted(i as i64, p.x, p.y, 1.0 - rng.uniform())
        })
        .collect()
}

impl GeneratorSpec {
    pub fn kind(&self) -> ArtifactKind {
        use GeneratorSpec::*;
        match self {
            ReactionDiffusion(_) | KernelMixture(_) | Percolation(_) | Blocks(_) | UniformGrid(_) => ArtifactKind::Grid,
            TreeNetwork(_) | RandomPlanar(_) | Gravity(_) | CostBenefit(_) | SlimeMould(_) | CitySystem(_) => {
                ArtifactKind::Network
            }
            HomogeneousPoisson(_) | InhomogeneousPoisson(_) => ArtifactKind::Points,
        }
    }

    pub fn generate(&self, rng: &mut RngStream) -> Result<Artifact> {
        use GeneratorSpec::*;
        Ok(match self {
            ReactionDiffusion(p) => Artifact::Grid(generate_reaction_diffusion(p, rng)?),
            KernelMixture(p) => Artifact::Grid(generate_kernel_mixture(p, rng)?),
            Percolation(p) => Artifact::Grid(generate_percolation(p, rng)?),
            Blocks(p) => Artifact::Grid(generate_blocks(p, rng)?),
            UniformGrid(p) => {
                if p.size == 0 {
                    return Err(spatialgen::Error::EmptyInput("grid"));
                }
                Artifact::Grid(Grid::new(p.size, p.size, vec![p.value; p.size * p.size])?)
            }
            TreeNetwork(p) => Artifact::Network(generate_tree_network(p.nodes, &checked(&p.window)?, rng)?),
            RandomPlanar(p) => {
                Artifact::Network(generate_random_planar(p.nodes, p.keep_probability, &checked(&p.window)?, rng)?)
            }
            Gravity(p) => {
                let nodes = weighted_nodes(p.nodes, &checked(&p.window)?, rng);
                Artifact::Network(generate_gravity_network(&nodes, &p.params)?)
            }
            CostBenefit(p) => {
                let nodes = weighted_nodes(p.nodes, &checked(&p.window)?, rng);
                Artifact::Network(generate_cost_benefit_network(&nodes, &p.params)?)
            }
            SlimeMould(p) => {
                let substrate = generate_random_planar(p.nodes, p.keep_probability, &checked(&p.window)?, rng)?;
                let k = p.terminals.min(p.nodes);
                let terminals = rng.sample_indices(p.nodes, k).into_iter().map(|i| substrate.nodes()[i].id).collect();
                let params = SlimeMouldParams {
                    iterations: p.iterations,
                    flow_amplification: p.flow_amplification,
                    decay: p.decay,
                    time_step: p.time_step,
                    input_flow: p.input_flow,
                    keep_threshold: p.keep_threshold,
                    terminals,
                };
                Artifact::Network(generate_slime_mould(&substrate, &params, rng)?)
            }
            CitySystem(p) => Artifact::Network(generate_city_system(&p.params, &checked(&p.window)?, rng)?),
            HomogeneousPoisson(p) => Artifact::Points(sample_homogeneous_poisson(p.lambda, &checked(&p.window)?, rng)?),
            InhomogeneousPoisson(p) => {
                let mut grid_rng = rng.substream(0);
                let grid = generate_kernel_mixture(&p.intensity, &mut grid_rng)?;
                Artifact::Points(sample_inhomogeneous_poisson(&grid, rng))
            }
        })
    }
}

/// One perturbation step, tagged by `type`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum PerturbationSpec {
    GridNoise { sigma: f64 },
    GridPoisson { lambda: f64, delta: f64 },
    DeleteNodes { count: usize, strategy: DeletionStrategy },
    DeleteLinks { count: usize, strategy: DeletionStrategy },
    Jitter { sigma: f64 },
}

impl PerturbationSpec {
    pub fn accepts(&self) -> ArtifactKind {
        match self {
            PerturbationSpec::GridNoise { .. } | PerturbationSpec::GridPoisson { .. } => ArtifactKind::Grid,
            _ => ArtifactKind::Network,
        }
    }

    pub fn apply(&self, artifact: Artifact, rng: &mut RngStream) -> Result<Artifact> {
        use PerturbationSpec::*;
        Ok(match (self, artifact) {
            (GridNoise { sigma }, Artifact::Grid(g)) => Artifact::Grid(perturb_grid_noise(&g, *sigma, rng)?),
            (GridPoisson { lambda, delta }, Artifact::Grid(g)) => {
                Artifact::Grid(perturb_grid_poisson(&g, *lambda, *delta, rng)?)
            }
            (DeleteNodes { count, strategy }, Artifact::Network(n)) => {
                Artifact::Network(delete_nodes(&n, *count, *strategy, rng)?)
            }
            (DeleteLinks { count, strategy }, Artifact::Network(n)) => {
                Artifact::Network(delete_links(&n, *count, *strategy, rng)?)
            }
            (Jitter { sigma }, Artifact::Network(n)) => Artifact::Network(jitter_nodes(&n, *sigma, rng)?),
            (_, other) => {
                return Err(spatialgen::Error::InvalidParameter {
                    name: "perturbation",
                    reason: format!("cannot apply to a {}", other.kind().name()),
                })
            }
        })
    }
}

fn default_mix() -> f64 {
    0.5
}

fn default_max_steps() -> usize {
    100_000
}

/// Schelling run on the generated grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SchellingSpec {
    pub occupied_fraction: f64,
    #[serde(default = "default_mix")]
    pub mix_ratio: f64,
    pub tolerance: f64,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelOutcome {
    pub initial_index: f64,
    pub final_index: f64,
    pub steps: usize,
}

impl SchellingSpec {
    pub fn run(&self, grid: &Grid, rng: &mut RngStream) -> Result<ModelOutcome> {
        let state = init_schelling(grid, self.occupied_fraction, self.mix_ratio, self.tolerance, rng)?;
        let initial_index = segregation_index(&state);
        let run = run_schelling(state, self.max_steps, rng)?;
        Ok(ModelOutcome { initial_index, final_index: segregation_index(&run.state), steps: run.state.step() })
    }
}
