use std::collections::VecDeque;

use super::{PermError, Permutation};

/// One level of the stabilizer chain: strong generators fixing the earlier
/// base points, and a transversal for the orbit of this level's base point.
#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Permutation::identity(degree));
        Level {
            base_point,
            generators: Vec::new(),
            transversal,
            orbit: vec![base_point],
        }
    }
}

/// A permutation group given by generators, with a base and strong generating
/// set built eagerly by deterministic Schreier–Sims on the base `1, 2, …, n`.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        let levels = (0..degree.saturating_sub(1))
            .map(|b| Level::new(b, degree))
            .collect();
        let mut group = PermGroup {
            degree,
            generators: generators.clone(),
            levels,
        };
        for g in generators {
            group.extend(0, g);
        }
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::transposition(degree, 1, 2));
            let cycle: Vec<usize> = (1..=degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle]).unwrap());
        }
        PermGroup::new(degree, gens).unwrap()
    }

    /// Generated by the 3-cycles `(1 2 k)`, `k = 3..n`.
    pub fn alternating(degree: usize) -> Self {
        let gens = (3..=degree)
            .map(|k| Permutation::from_cycles(degree, &[&[1, 2, k]]).unwrap())
            .collect();
        PermGroup::new(degree, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Base points whose orbit is nontrivial, 1-based.
    pub fn base(&self) -> Vec<usize> {
        self.levels
            .iter()
            .filter(|l| l.orbit.len() > 1)
            .map(|l| l.base_point + 1)
            .collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(0, g.clone()).is_identity()
    }

    /// Every element, in chain order. Intended for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for h in &out {
                for &b in &level.orbit {
                    let u = level.transversal[b].as_ref().unwrap();
                    next.push(h.then(u));
                }
            }
            out = next;
        }
        out
    }

    /// Strips `g` through the chain from `level` down; the identity means membership.
    fn sift(&self, from: usize, mut g: Permutation) -> Permutation {
        for level in &self.levels[from..] {
            let b = g.apply0(level.base_point);
            match &level.transversal[b] {
                Some(u) => g = g.then(&u.inverse()),
                None => return g,
            }
        }
        g
    }

    /// Adds `g`, which fixes the base points before `level`, to the chain.
    fn extend(&mut self, level: usize, g: Permutation) {
        if level >= self.levels.len() || self.sift(level, g.clone()).is_identity() {
            return;
        }
        self.levels[level].generators.push(g.clone());
        let gen_index = self.levels[level].generators.len() - 1;

        let old_points = self.levels[level].orbit.clone();
        let mut queue: VecDeque<usize> = VecDeque::new();
        for b in old_points {
            self.apply_generator(level, b, gen_index, &mut queue);
        }
        while let Some(b) = queue.pop_front() {
            for s in 0..self.levels[level].generators.len() {
                self.apply_generator(level, b, s, &mut queue);
            }
        }
    }

    fn apply_generator(
        &mut self,
        level: usize,
        b: usize,
        gen_index: usize,
        queue: &mut VecDeque<usize>,
    ) {
        let lvl = &self.levels[level];
        let s = &lvl.generators[gen_index];
        let u_b = lvl.transversal[b]
            .as_ref()
            .expect("orbit point has a transversal");
        let c = s.apply0(b);
        let u_b_s = u_b.then(s);
        match &lvl.transversal[c] {
            None => {
                let lvl = &mut self.levels[level];
                lvl.transversal[c] = Some(u_b_s);
                lvl.orbit.push(c);
                queue.push_back(c);
            }
            Some(u_c) => {
                let schreier = u_b_s.then(&u_c.inverse());
                if !schreier.is_identity() {
                    self.extend(level + 1, schreier);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    /// Independent oracle: breadth-first closure under right multiplication.
    fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::from([Permutation::identity(degree)]);
        let mut frontier = vec![Permutation::identity(degree)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn orders_match_closure() {
        let cases: Vec<(usize, Vec<Permutation>)> = vec![
            (5, vec![p("(1 2 3)", 5), p("(3 4 5)", 5)]),
            (5, vec![p("(1 2)", 5), p("(1 2 3 4 5)", 5)]),
            (6, vec![p("(1 2)(3 4)", 6), p("(1 3 5)(2 4 6)", 6)]),
            (7, vec![p("(1 2 3 4 5 6 7)", 7), p("(2 3 5)(4 7 6)", 7)]),
            (4, vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]),
        ];
        for (n, gens) in cases {
            let g = PermGroup::new(n, gens.clone()).unwrap();
            let brute = closure(n, &gens);
            assert_eq!(g.order(), brute.len() as u128);
            for x in &brute {
                assert!(g.contains(x));
            }
            let elements: HashSet<_> = g.elements().into_iter().collect();
            assert_eq!(elements, brute);
        }
    }

    #[test]
    fn frozen_orders() {
        assert_eq!(
            PermGroup::new(5, vec![p("(1 2 3)", 5), p("(3 4 5)", 5)])
                .unwrap()
                .order(),
            60
        );
        assert_eq!(
            PermGroup::new(5, vec![p("(1 2)", 5), p("(1 2 3 4 5)", 5)])
                .unwrap()
                .order(),
            120
        );
        assert_eq!(PermGroup::trivial(5).order(), 1);
        assert_eq!(PermGroup::trivial(0).order(), 1);
        for n in 2..=9u128 {
            let fact: u128 = (1..=n).product();
            assert_eq!(PermGroup::symmetric(n as usize).order(), fact);
            assert_eq!(PermGroup::alternating(n as usize).order(), fact / 2);
        }
    }

    #[test]
    fn membership_rejects_outsiders() {
        let a5 = PermGroup::alternating(5);
        assert!(a5.contains(&p("(1 2 3)", 5)));
        assert!(!a5.contains(&p("(1 2)", 5)));
        assert!(!a5.contains(&p("(1 2 3)", 6)));
    }

    #[test]
    fn degree_mismatch_rejected() {
        assert!(PermGroup::new(4, vec![p("(1 2)", 5)]).is_err());
    }
}
