//! The (2,3) pebble game of Lee–Streinu, deciding generic rigidity of
//! graphs in the plane.
//!
//! Each vertex starts with two pebbles. An edge is independent when four
//! pebbles can be gathered on its endpoints; inserting it consumes one. A
//! graph is generically rigid in 2D exactly when 2n - 3 independent edges
//! are accepted.

use crate::rigidity::Graph;

/// Whether the graph is generically (locally) rigid in dimension 2.
pub fn laman_glr_2d(graph: &Graph) -> bool {
    let n = graph.n();
    if n == 1 {
        return true;
    }
    let independent = pebble_game_23(graph);
    independent == 2 * n - 3
}

/// Number of edges accepted by the (2,3) pebble game, i.e. the rank of the
/// edge set in the generic 2D rigidity matroid.
pub fn pebble_game_23(graph: &Graph) -> usize {
    let n = graph.n();
    let mut pebbles = vec![2u8; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut accepted = 0;

    for &(u, v) in graph.edges() {
        while (pebbles[u] + pebbles[v]) < 4 {
            if !gather_pebble(u, v, &mut pebbles, &mut out)
                && !gather_pebble(v, u, &mut pebbles, &mut out)
            {
                break;
            }
        }
        if pebbles[u] + pebbles[v] >= 4 {
            accepted += 1;
            if pebbles[u] > 0 {
                pebbles[u] -= 1;
                out[u].push(v);
            } else {
                pebbles[v] -= 1;
                out[v].push(u);
            }
        }
    }
    accepted
}

/// Search along directed edges from `start` for a free pebble, with the
/// opposite endpoint blocked, and pull it back by reversing the path.
fn gather_pebble(
    start: usize,
    blocked: usize,
    pebbles: &mut [u8],
    out: &mut [Vec<usize>],
) -> bool {
    let n = pebbles.len();
    let mut visited = vec![false; n];
    visited[start] = true;
    visited[blocked] = true;
    // parent[w] = vertex whose out-edge reached w.
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for idx in 0..out[v].len() {
            let w = out[v][idx];
            if visited[w] {
                continue;
            }
            visited[w] = true;
            parent[w] = Some(v);
            if pebbles[w] > 0 {
                // Reverse the path start -> ... -> w.
                pebbles[w] -= 1;
                pebbles[start] += 1;
                let mut cur = w;
                while let Some(p) = parent[cur] {
                    let pos = out[p].iter().position(|&x| x == cur).expect("path edge");
                    out[p].swap_remove(pos);
                    out[cur].push(p);
                    cur = p;
                }
                return true;
            }
            stack.push(w);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_rigid() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(laman_glr_2d(&g));
    }

    #[test]
    fn path_on_three_vertices_is_flexible() {
        let g = Graph::new(3, vec![(0, 2), (1, 2)]).unwrap();
        assert!(!laman_glr_2d(&g));
    }

    #[test]
    fn square_with_diagonal_is_rigid() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(laman_glr_2d(&g));
    }

    #[test]
    fn four_cycle_is_flexible() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!laman_glr_2d(&g));
    }

    #[test]
    fn double_banana_edges_are_dependent_in_2d() {
        // K4 has 6 edges but rank 5 = 2*4 - 3 in the 2D rigidity matroid.
        let g = Graph::complete(4);
        assert_eq!(pebble_game_23(&g), 5);
        assert!(laman_glr_2d(&g));
    }

    #[test]
    fn insertion_order_does_not_matter() {
        let edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)];
        let forward = Graph::new(4, edges.clone()).unwrap();
        let mut reversed_edges = edges;
        reversed_edges.reverse();
        let reversed = Graph::new(4, reversed_edges).unwrap();
        assert_eq!(pebble_game_23(&forward), pebble_game_23(&reversed));
    }
}
