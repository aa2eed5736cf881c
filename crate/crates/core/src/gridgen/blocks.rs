use serde::{Deserialize, Serialize};

use crate::{Error, Grid, Result, RngStream};

const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BlocksParams {
    pub size: usize,
    pub n_blocks: usize,
    pub min_block_side: usize,
    pub max_block_side: usize,
    #[serde(default = "default_true")]
    pub allow_overlap: bool,
}

fn default_true() -> bool {
    true
}

impl BlocksParams {
    pub fn validate(&self) -> Result<()> {
        super::check_size(self.size)?;
        if !(1 <= self.min_block_side && self.min_block_side <= self.max_block_side && self.max_block_side <= self.size) {
            return Err(Error::param(
                "minBlockSide/maxBlockSide",
                format!("need 1 <= min <= max <= size, got {} / {}", self.min_block_side, self.max_block_side),
            ));
        }
        Ok(())
    }
}

/// Axis-aligned block of cells `[row, row + height) × [col, col + width)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub row: usize,
    pub col: usize,
    pub width: usize,
    pub height: usize,
}

impl Rect {
    pub fn intersects(&self, o: &Rect) -> bool {
        self.row < o.row + o.height && o.row < self.row + self.height && self.col < o.col + o.width && o.col < self.col + self.width
    }

    pub fn area(&self) -> usize {
        self.width * self.height
    }
}

pub fn generate_blocks(p: &BlocksParams, rng: &mut RngStream) -> Result<Grid> {
    generate_blocks_with_rects(p, rng).map(|(g, _)| g)
}

/// Procedural building blocks; also returns the placed rectangles.
///
/// Without overlap, each block gets up to 1000 placement attempts and is
/// skipped when none fits.
pub fn generate_blocks_with_rects(p: &BlocksParams, rng: &mut RngStream) -> Result<(Grid, Vec<Rect>)> {
    p.validate()?;
    let mut values = vec![0.0; p.size * p.size];
    let mut rects = Vec::with_capacity(p.n_blocks);
    for _ in 0..p.n_blocks {
        let attempts = if p.allow_overlap { 1 } else { MAX_ATTEMPTS };
        for _ in 0..attempts {
            let width = rng.int_inclusive(p.min_block_side, p.max_block_side);
            let height = rng.int_inclusive(p.min_block_side, p.max_block_side);
            let col = rng.below(p.size - width + 1);
            let row = rng.below(p.size - height + 1);
            let rect = Rect { row, col, width, height };
            if !p.allow_overlap && rects.iter().any(|r: &Rect| r.intersects(&rect)) {
                continue;
            }
            for r in row..row + height {
                values[r * p.size + col..r * p.size + col + width].fill(1.0);
            }
            rects.push(rect);
            break;
        }
    }
    Ok((Grid::from_parts_unchecked(p.size, p.size, 1.0, values), rects))
}
