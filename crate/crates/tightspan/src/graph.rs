//! Subgraphs of the complete graph `K_n` and the combinatorial predicates
//! the subdivision theory needs: spanning, star, component structure, and
//! nontrivial even tours.
//!
//! Points are labeled `1..=n` in the public API. A subgraph doubles as the
//! label of a cell of the regular subdivision: the cell's vertices are the
//! hypersimplex vertices `e_i + e_j` for the edges `ij` of the subgraph.

/// Largest supported point count. Edge sets are stored as bit masks over
/// the `C(n,2) <= 120` unordered pairs.
pub const MAX_POINTS: usize = 16;

/// Error constructing a [`Subgraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// `n` is 0 or exceeds [`MAX_POINTS`].
    PointCount { n: usize },
    /// An edge endpoint is outside `1..=n`.
    VertexOutOfRange { vertex: usize, n: usize },
    /// An edge joins a vertex to itself.
    LoopEdge { vertex: usize },
}

impl std::fmt::Display for GraphError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphError::PointCount { n } => {
                write!(f, "point count {n} out of range (1..={MAX_POINTS})")
            }
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range 1..={n}")
            }
            GraphError::LoopEdge { vertex } => write!(f, "loop edge at vertex {vertex}"),
        }
    }
}

impl std::error::Error for GraphError {}

/// Index of the unordered pair `{i,j}` (0-based `i < j < n`) in
/// lexicographic order `(0,1), (0,2), ..., (0,n-1), (1,2), ...`.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Number of unordered pairs of `[n]`.
pub(crate) fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// An edge set over the points `1..=n`; no loops, no multi-edges.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgraph {
    n: usize,
    mask: u128,
}

impl Subgraph {
    /// The empty subgraph on `n` points.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_POINTS, "point count {n} out of range");
        Subgraph { n, mask: 0 }
    }

    /// The complete graph on `n` points.
    pub fn complete(n: usize) -> Self {
        let mut g = Subgraph::empty(n);
        g.mask = (1u128 << pair_count(n)) - 1;
        g
    }

    /// Builds a subgraph from 1-based edges. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_POINTS {
            return Err(GraphError::PointCount { n });
        }
        let mut g = Subgraph::empty(n);
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::LoopEdge { vertex: a });
            }
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            g = g.with_edge(a, b);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    fn bit(&self, a: usize, b: usize) -> u128 {
        let (i, j) = if a < b { (a - 1, b - 1) } else { (b - 1, a - 1) };
        1u128 << pair_index(self.n, i, j)
    }

    /// Membership of the edge `{a,b}` (1-based, order irrelevant).
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.mask & self.bit(a, b) != 0
    }

    /// Copy with the edge `{a,b}` added.
    pub fn with_edge(&self, a: usize, b: usize) -> Self {
        Subgraph { n: self.n, mask: self.mask | self.bit(a, b) }
    }

    /// Copy with the edge `{a,b}` removed.
    pub fn without_edge(&self, a: usize, b: usize) -> Self {
        Subgraph { n: self.n, mask: self.mask & !self.bit(a, b) }
    }

    pub fn union(&self, other: &Subgraph) -> Self {
        assert_eq!(self.n, other.n);
        Subgraph { n: self.n, mask: self.mask | other.mask }
    }

    pub fn is_subset_of(&self, other: &Subgraph) -> bool {
        self.n == other.n && self.mask & !other.mask == 0
    }

    /// Edges in lexicographic order, 1-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.mask >> pair_index(self.n, i, j) & 1 == 1 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        (1..=self.n).filter(|&u| u != v && self.contains(v, u)).count()
    }

    /// True iff every point of `[n]` is an endpoint of some edge.
    pub fn is_spanning(&self) -> bool {
        (1..=self.n).all(|v| self.degree(v) > 0)
    }

    /// True iff the subgraph is exactly the star `K_{1,n-1}`: `n-1` edges
    /// all sharing one common vertex.
    pub fn is_star(&self) -> bool {
        if self.edge_count() != self.n - 1 {
            return false;
        }
        (1..=self.n).any(|hub| self.degree(hub) == self.n - 1)
    }

    fn neighbors(&self, v: usize) -> Vec<usize> {
        (1..=self.n).filter(|&u| u != v && self.contains(v, u)).collect()
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// vertex. Isolated vertices form singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn edges_within(&self, comp: &[usize]) -> usize {
        let mut count = 0;
        for (idx, &a) in comp.iter().enumerate() {
            for &b in &comp[idx + 1..] {
                if self.contains(a, b) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Classifies every connected component. Components are reported in
    /// order of their smallest vertex; isolated vertices count as trees of
    /// size 1.
    pub fn classify_components(&self) -> Vec<ComponentKind> {
        self.components()
            .iter()
            .map(|comp| {
                let vertices = comp.len();
                let edges = self.edges_within(comp);
                if edges == vertices.saturating_sub(1) {
                    ComponentKind::Tree { vertices }
                } else if edges == vertices {
                    let cycle = self.unique_cycle(comp);
                    if cycle.len() % 2 == 1 {
                        ComponentKind::UnicyclicOdd { vertices, cycle_len: cycle.len() }
                    } else {
                        ComponentKind::Other {
                            vertices,
                            reason: CycleDefect::EvenCycle { len: cycle.len() },
                        }
                    }
                } else {
                    ComponentKind::Other { vertices, reason: CycleDefect::ExtraCycles { edges } }
                }
            })
            .collect()
    }

    /// The unique cycle of a unicyclic component, as an ordered vertex list
    /// starting at its smallest vertex. `comp` must have #edges == #vertices.
    pub(crate) fn unique_cycle(&self, comp: &[usize]) -> Vec<usize> {
        // Peel leaves until only the cycle remains.
        let mut alive: Vec<usize> = comp.to_vec();
        loop {
            let degrees: Vec<usize> = alive
                .iter()
                .map(|&v| alive.iter().filter(|&&u| u != v && self.contains(v, u)).count())
                .collect();
            let keep: Vec<usize> = alive
                .iter()
                .zip(&degrees)
                .filter(|(_, &d)| d >= 2)
                .map(|(&v, _)| v)
                .collect();
            if keep.len() == alive.len() {
                break;
            }
            alive = keep;
        }
        // Walk the 2-regular remainder, deterministically.
        let start = *alive.iter().min().expect("unicyclic component has a cycle");
        let in_cycle = |v: usize| alive.contains(&v);
        let mut cycle = vec![start];
        let mut prev = 0usize;
        let mut cur = start;
        loop {
            let next = self
                .neighbors(cur)
                .into_iter()
                .filter(|&u| in_cycle(u) && u != prev)
                .min()
                .expect("cycle vertex has two cycle neighbors");
            if next == start {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        cycle
    }

    /// True iff the graph admits a nontrivial even tour: a closed edge walk
    /// of even length in which some edge appears exactly once.
    ///
    /// Computed via the component rule (a component admits one iff it has
    /// an even cycle or more than one independent cycle); the rule itself
    /// is validated against the exhaustive-walk oracle in the test suite.
    pub fn has_nontrivial_even_tour(&self) -> bool {
        self.classify_components()
            .iter()
            .any(|kind| matches!(kind, ComponentKind::Other { .. }))
    }

    /// Produces an explicit nontrivial even tour as a closed vertex walk
    /// (first vertex repeated at the end), or `None` if there is none.
    ///
    /// Used to build human-readable non-genericity certificates.
    pub fn find_even_tour(&self) -> Option<Vec<usize>> {
        for comp in self.components() {
            if let Some(walk) = self.component_even_tour(&comp) {
                return Some(walk);
            }
        }
        None
    }

    /// Even tour search within one component, via fundamental cycles of a
    /// DFS spanning tree: an even fundamental cycle is itself a tour; two
    /// odd cycles concatenate (through a connecting tree path walked both
    /// ways) into one.
    fn component_even_tour(&self, comp: &[usize]) -> Option<Vec<usize>> {
        let root = comp[0];
        let mut parent = vec![0usize; self.n + 1];
        let mut depth = vec![usize::MAX; self.n + 1];
        depth[root] = 0;
        let mut order = vec![root];
        let mut stack = vec![root];
        let mut tree_edges = Vec::new();
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if depth[u] == usize::MAX {
                    depth[u] = depth[v] + 1;
                    parent[u] = v;
                    tree_edges.push((v.min(u), v.max(u)));
                    order.push(u);
                    stack.push(u);
                }
            }
        }
        // Fundamental cycle for each non-tree edge.
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for (idx, &a) in comp.iter().enumerate() {
            for &b in &comp[idx + 1..] {
                if !self.contains(a, b) || tree_edges.contains(&(a, b)) {
                    continue;
                }
                cycles.push(fundamental_cycle(&parent, &depth, a, b));
            }
        }
        if let Some(even) = cycles.iter().find(|c| c.len() % 2 == 0) {
            let mut walk = even.clone();
            walk.push(even[0]);
            return Some(walk);
        }
        if cycles.len() >= 2 {
            return Some(join_odd_cycles(&cycles[0], &cycles[1], &parent, &depth));
        }
        None
    }
}

impl std::fmt::Display for Subgraph {
    /// Space-separated sorted edge list, e.g. `1-2 1-3 2-3`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (a, b) in self.edges() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}")?;
            first = false;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Subgraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgraph(n={}, [{}])", self.n, self)
    }
}

/// The cycle closed by the non-tree edge `{a,b}`: walk both endpoints up to
/// their lowest common ancestor.
fn fundamental_cycle(parent: &[usize], depth: &[usize], a: usize, b: usize) -> Vec<usize> {
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    let (mut x, mut y) = (a, b);
    while depth[x] > depth[y] {
        x = parent[x];
        up_a.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        up_b.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        up_a.push(x);
        up_b.push(y);
    }
    // up_a ends at the LCA; up_b's copy of the LCA is dropped.
    up_b.pop();
    up_b.reverse();
    up_a.extend(up_b);
    up_a
}

/// Tree path `from -> to` through the LCA, as a vertex list including both
/// endpoints.
fn tree_path(parent: &[usize], depth: &[usize], from: usize, to: usize) -> Vec<usize> {
    let mut head = vec![from];
    let mut tail = vec![to];
    let (mut x, mut y) = (from, to);
    while depth[x] > depth[y] {
        x = parent[x];
        head.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        tail.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        head.push(x);
        tail.push(y);
    }
    tail.pop();
    tail.reverse();
    head.extend(tail);
    head
}

/// Concatenates two odd cycles into a closed even walk: traverse the first
/// cycle, walk the tree path to the second, traverse it, walk back. Each
/// cycle's own non-tree edge appears exactly once, so the tour is
/// nontrivial; odd + odd + twice the path is even.
fn join_odd_cycles(c1: &[usize], c2: &[usize], parent: &[usize], depth: &[usize]) -> Vec<usize> {
    if let Some(pos) = c1.iter().position(|v| c2.contains(v)) {
        // Shared vertex: rotate both cycles to start there.
        let v = c1[pos];
        let mut walk = rotate_cycle(c1, v);
        walk.extend(rotate_cycle(c2, v));
        walk.push(v);
        return walk;
    }
    // Disjoint cycles: connect through the spanning tree.
    let path = tree_path(parent, depth, c1[0], c2[0]);
    let mut walk = rotate_cycle(c1, c1[0]);
    walk.extend(path.iter().copied());
    let mut back = rotate_cycle(c2, c2[0]);
    back.remove(0);
    walk.extend(back);
    walk.extend(path.iter().rev().copied());
    walk
}

/// Cycle vertices rotated to start at `v` (without the closing repeat).
fn rotate_cycle(cycle: &[usize], v: usize) -> Vec<usize> {
    let pos = cycle.iter().position(|&u| u == v).expect("vertex on cycle");
    let mut out = Vec::with_capacity(cycle.len());
    out.extend_from_slice(&cycle[pos..]);
    out.extend_from_slice(&cycle[..pos]);
    out
}

/// Shape of one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentKind {
    /// #edges == #vertices - 1 (isolated vertices are trees of size 1).
    Tree { vertices: usize },
    /// Exactly one cycle, of odd length. `vertices == cycle_len` means the
    /// component is a pure odd cycle with no pendant trees.
    UnicyclicOdd { vertices: usize, cycle_len: usize },
    /// The component admits a nontrivial even tour.
    Other { vertices: usize, reason: CycleDefect },
}

/// Why a component is neither a tree nor odd-unicyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleDefect {
    /// Unique cycle of even length.
    EvenCycle { len: usize },
    /// More edges than vertices, hence at least two independent cycles.
    ExtraCycles { edges: usize },
}

impl ComponentKind {
    /// Single edge on two vertices.
    pub fn is_single_edge(&self) -> bool {
        matches!(self, ComponentKind::Tree { vertices: 2 })
    }

    /// Odd cycle without pendant trees.
    pub fn is_pure_odd_cycle(&self) -> bool {
        matches!(self, ComponentKind::UnicyclicOdd { vertices, cycle_len } if vertices == cycle_len)
    }
}

/// Renders a closed vertex walk as `"1-2 2-3 3-1"` for certificates.
pub fn format_walk(walk: &[usize]) -> String {
    walk.windows(2)
        .map(|w| format!("{}-{}", w[0], w[1]))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Subgraph {
        Subgraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn spanning_examples() {
        assert!(g(4, &[(1, 2), (3, 4)]).is_spanning());
        assert!(!g(4, &[(1, 2), (1, 3)]).is_spanning());
        assert!(g(3, &[(1, 2), (1, 3), (2, 3)]).is_spanning());
    }

    #[test]
    fn star_examples() {
        assert!(g(4, &[(1, 2), (1, 3), (1, 4)]).is_star());
        assert!(!g(4, &[(1, 2), (3, 4)]).is_star());
        assert!(g(3, &[(1, 2), (1, 3)]).is_star());
        // single edge on two points is K_{1,1}
        assert!(g(2, &[(1, 2)]).is_star());
        // right edge count but no hub
        assert!(!g(4, &[(1, 2), (2, 3), (3, 4)]).is_star());
    }

    #[test]
    fn component_classification() {
        let triangle = g(3, &[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(
            triangle.classify_components(),
            vec![ComponentKind::UnicyclicOdd { vertices: 3, cycle_len: 3 }]
        );

        let square = g(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert_eq!(
            square.classify_components(),
            vec![ComponentKind::Other { vertices: 4, reason: CycleDefect::EvenCycle { len: 4 } }]
        );

        let edge = g(4, &[(1, 2)]);
        assert_eq!(
            edge.classify_components(),
            vec![
                ComponentKind::Tree { vertices: 2 },
                ComponentKind::Tree { vertices: 1 },
                ComponentKind::Tree { vertices: 1 },
            ]
        );
    }

    #[test]
    fn even_tour_examples() {
        assert!(g(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).has_nontrivial_even_tour());
        assert!(!g(3, &[(1, 2), (2, 3), (1, 3)]).has_nontrivial_even_tour());
        // bowtie: two triangles sharing vertex 3
        let bowtie = g(5, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]);
        assert!(bowtie.has_nontrivial_even_tour());
        let walk = bowtie.find_even_tour().unwrap();
        assert_eq!(walk.first(), walk.last());
        assert_eq!((walk.len() - 1) % 2, 0);
    }

    #[test]
    fn even_tour_walks_are_valid() {
        // theta graph: vertices 1,2 joined by paths 1-2, 1-3-2, 1-4-2
        let theta = g(4, &[(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)]);
        let walk = theta.find_even_tour().expect("theta has an even cycle");
        check_tour(&theta, &walk);
        // two disjoint triangles joined by a path
        let dumbbell =
            g(7, &[(1, 2), (2, 3), (1, 3), (3, 7), (4, 7), (4, 5), (5, 6), (4, 6)]);
        let walk = dumbbell.find_even_tour().expect("two odd cycles give a tour");
        check_tour(&dumbbell, &walk);
    }

    fn check_tour(graph: &Subgraph, walk: &[usize]) {
        assert_eq!(walk.first(), walk.last(), "closed");
        assert_eq!((walk.len() - 1) % 2, 0, "even length");
        let mut mult = std::collections::HashMap::new();
        for w in walk.windows(2) {
            assert!(graph.contains(w[0], w[1]), "walk uses graph edges");
            *mult.entry((w[0].min(w[1]), w[0].max(w[1]))).or_insert(0usize) += 1;
        }
        assert!(mult.values().any(|&m| m == 1), "some edge appears exactly once");
    }

    #[test]
    fn unique_cycle_of_tadpole() {
        let tadpole = g(5, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5)]);
        let comp = tadpole.components().remove(0);
        assert_eq!(tadpole.unique_cycle(&comp), vec![1, 2, 3]);
    }

    #[test]
    fn display_is_sorted_edge_list() {
        let graph = g(4, &[(3, 4), (1, 3), (1, 2)]);
        assert_eq!(graph.to_string(), "1-2 1-3 3-4");
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            Subgraph::from_edges(3, &[(1, 1)]),
            Err(GraphError::LoopEdge { vertex: 1 })
        );
        assert_eq!(
            Subgraph::from_edges(3, &[(1, 4)]),
            Err(GraphError::VertexOutOfRange { vertex: 4, n: 3 })
        );
        assert!(Subgraph::from_edges(17, &[]).is_err());
    }
}
