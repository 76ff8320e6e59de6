use super::{GElement, GroupModel};

/// One double coset `HgK`, named by its lexicographically least element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleCoset {
    pub rep: GElement,
    pub size: usize,
}

impl GroupModel {
    /// Partition `G` into double cosets `H\G/K`.
    ///
    /// Representatives come out in lexicographic order, so the identity
    /// (the least element of `G`) always heads the list.
    pub fn double_cosets_of(&self, h: &[GElement], k: &[GElement]) -> Vec<DoubleCoset> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in self.elements() {
            if seen[self.index(g)] {
                continue;
            }
            let mut size = 0;
            for &a in h {
                let ag = self.mul(a, g);
                for &b in k {
                    let idx = self.index(self.mul(ag, b));
                    if !seen[idx] {
                        seen[idx] = true;
                        size += 1;
                    }
                }
            }
            out.push(DoubleCoset { rep: g, size });
        }
        out
    }

    /// Member of the double coset `HgK` produced by `a·g·b`; used to test
    /// independence of the representative choice.
    pub fn coset_variant(&self, g: GElement, a: GElement, b: GElement) -> GElement {
        self.mul(self.mul(a, g), b)
    }
}
