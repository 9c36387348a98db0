use crate::error::{Error, Result};

/// Subset sums `{sum t_k / a_k}` encoded as integers scaled by a common
/// denominator `scale`: bit `j` is set iff `j / scale` is reachable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachableSet {
    scale: u64,
    len: u64,
    words: Vec<u64>,
    count: u64,
}

fn words_for(len: u64) -> u64 {
    len.div_ceil(64)
}

impl Default for ReachableSet {
    fn default() -> Self {
        Self::new()
    }
}

impl ReachableSet {
    /// The sum set of the empty family: `{0}` at scale 1.
    pub fn new() -> Self {
        Self {
            scale: 1,
            len: 1,
            words: vec![1],
            count: 1,
        }
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Number of bit positions in use, `1 + max reachable index`.
    pub fn bit_len(&self) -> u64 {
        self.len
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn contains(&self, j: u64) -> bool {
        j < self.len && (self.words[(j / 64) as usize] >> (j % 64)) & 1 == 1
    }

    /// Highest set bit; equals `sum scale / a_k` over the elements added.
    pub fn max_index(&self) -> u64 {
        self.len - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(w as u64 * 64 + t)
            })
        })
    }

    fn check_budget(new_len: u64, budget: u64, stage: &dyn Fn() -> String) -> Result<()> {
        let bytes = u128::from(words_for(new_len)) * 8;
        if bytes > u128::from(budget) {
            return Err(Error::Resource {
                stage: stage(),
                needed: bytes,
                budget,
            });
        }
        Ok(())
    }

    /// Moves to the finer scale `new_scale`, a multiple of the current one:
    /// bit `j` becomes bit `j * new_scale / scale`.
    pub fn rescale(&mut self, new_scale: u64, budget: u64, stage: &dyn Fn() -> String) -> Result<()> {
        if new_scale == self.scale {
            return Ok(());
        }
        if new_scale % self.scale != 0 {
            return Err(Error::Structural(format!(
                "scale {new_scale} is not a multiple of {}",
                self.scale
            )));
        }
        let factor = new_scale / self.scale;
        let new_len = (self.len - 1)
            .checked_mul(factor)
            .and_then(|x| x.checked_add(1))
            .ok_or_else(|| Error::Overflow("reachable-set length".into()))?;
        Self::check_budget(new_len, budget, stage)?;
        let mut words = vec![0u64; words_for(new_len) as usize];
        for j in self.iter() {
            let k = j * factor;
            words[(k / 64) as usize] |= 1 << (k % 64);
        }
        self.words = words;
        self.len = new_len;
        self.scale = new_scale;
        Ok(())
    }

    /// Adds one more element whose scaled weight is `shift`:
    /// the set becomes `S ∪ (S + shift)`.
    pub fn add_weight(&mut self, shift: u64, budget: u64, stage: &dyn Fn() -> String) -> Result<()> {
        let new_len = self
            .len
            .checked_add(shift)
            .ok_or_else(|| Error::Overflow("reachable-set length".into()))?;
        Self::check_budget(new_len, budget, stage)?;
        let new_words = words_for(new_len) as usize;
        self.words.resize(new_words, 0);
        let q = (shift / 64) as usize;
        let r = (shift % 64) as u32;
        let words = &mut self.words;
        for w in (q..new_words).rev() {
            let s = w - q;
            let mut val = words[s] << r;
            if r > 0 && s > 0 {
                val |= words[s - 1] >> (64 - r);
            }
            words[w] |= val;
        }
        self.len = new_len;
        self.count = words.iter().map(|w| u64::from(w.count_ones())).sum();
        Ok(())
    }
}
