"""Reference values computed with cvxpy/Clarabel and networkx, independent of the C++ solver.

Writes tests/data/oracles.json. Re-run with:  python3 tests/oracles/gen_oracles.py
"""
import itertools
import json
import pathlib

import cvxpy as cp
import networkx as nx
import numpy as np

HERE = pathlib.Path(__file__).resolve().parent
DATA = HERE.parent / "data"
SOLVER = dict(solver=cp.CLARABEL, tol_gap_abs=1e-9, tol_gap_rel=1e-9, tol_feas=1e-9)


def solve(prob):
    # tight tolerances first; Clarabel defaults (1e-8) when those do not converge
    try:
        prob.solve(**SOLVER)
    except cp.error.SolverError:
        pass
    if prob.status != cp.OPTIMAL:
        try:
            prob.solve(solver=cp.CLARABEL)
        except cp.error.SolverError:
            pass
    return prob.status == cp.OPTIMAL


def value(ok, var):
    # degenerate (mostly bipartite) instances where no solver converges are stored as null
    return float(var.value) if ok else None


def spn_split(M):
    n = M.shape[0]
    P = cp.Variable((n, n), PSD=True)
    E = cp.Variable((n, n), symmetric=True)
    return P, E, [E >= 0]


def sigma(A):
    """max t with J - tA in SPN."""
    n = A.shape[0]
    t = cp.Variable()
    P, E, cons = spn_split(A)
    cons.append(np.ones((n, n)) - t * A == P + E)
    return value(solve(cp.Problem(cp.Maximize(t), cons)), t)


def spn_shift(M, D):
    """max s with M - sD in SPN."""
    s = cp.Variable()
    P, E, cons = spn_split(M)
    cons.append(M - s * D == P + E)
    return value(solve(cp.Problem(cp.Maximize(s), cons)), s)


def theta0(A):
    """min t with t(I + A) - J in SPN."""
    n = A.shape[0]
    t = cp.Variable()
    P, E, cons = spn_split(A)
    cons.append(t * (np.eye(n) + A) - np.ones((n, n)) == P + E)
    return value(solve(cp.Problem(cp.Minimize(t), cons)), t)


def pdec_shift(A, B):
    """max s with B - sI = B1 + B2, B1 PSD, diag(B2) >= 0, |B2_ij| <= sqrt(A_ij A_ji)."""
    n = A.shape[0]
    rho = np.sqrt(np.maximum(A * A.T, 0.0))
    s = cp.Variable()
    B1 = cp.Variable((n, n), hermitian=True) if np.iscomplexobj(B) else cp.Variable((n, n), symmetric=True)
    B2 = B - s * np.eye(n) - B1
    diag = cp.real(cp.diag(B2)) if np.iscomplexobj(B) else cp.diag(B2)
    cons = [B1 >> 0, diag >= 0]
    for i, j in itertools.combinations(range(n), 2):
        cons.append(cp.abs(B2[i, j]) <= rho[i, j])
    return value(solve(cp.Problem(cp.Maximize(s), cons)), s)


def omega(G):
    return max((len(c) for c in nx.find_cliques(G)), default=1 if G.number_of_nodes() else 0)


def adj(G):
    return nx.to_numpy_array(G, nodelist=sorted(G.nodes()))


def folded_cube(d):
    G = nx.Graph()
    reps = sorted({min(x, x ^ ((1 << d) - 1)) for x in range(1 << d)})
    rep = {x: min(x, x ^ ((1 << d) - 1)) for x in range(1 << d)}
    G.add_nodes_from(reps)
    for x in range(1 << d):
        for b in range(d):
            u, v = rep[x], rep[x ^ (1 << b)]
            if u != v:
                G.add_edge(u, v)
    return nx.convert_node_labels_to_integers(G)


def paley_prime(p):
    G = nx.Graph()
    G.add_nodes_from(range(p))
    res = {(x * x) % p for x in range(1, p)}
    for u, v in itertools.combinations(range(p), 2):
        if (v - u) % p in res:
            G.add_edge(u, v)
    return G


def rook(k):
    return nx.convert_node_labels_to_integers(nx.cartesian_product(nx.complete_graph(k), nx.complete_graph(k)))


def rank3_graphs():
    t6 = nx.convert_node_labels_to_integers(nx.line_graph(nx.complete_graph(6)))
    clebsch = folded_cube(5)
    pet = nx.petersen_graph()
    return {
        "paley5": nx.cycle_graph(5),
        "paley9": rook(3),
        "petersen": pet,
        "petersen-complement": nx.complement(pet),
        "paley13": paley_prime(13),
        "gq22": nx.complement(t6),
        "t6": t6,
        "clebsch": clebsch,
        "clebsch-complement": nx.complement(clebsch),
        "hamming24": rook(4),
        "hamming24-complement": nx.complement(rook(4)),
        "paley17": paley_prime(17),
    }


def srg(G):
    A = adj(G)
    n = A.shape[0]
    k = int(A.sum(axis=1)[0])
    A2 = A @ A
    lam = {int(round(A2[i, j])) for i in range(n) for j in range(n) if i != j and A[i, j]}
    mu = {int(round(A2[i, j])) for i in range(n) for j in range(n) if i != j and not A[i, j]}
    return [n, k, lam.pop() if lam else 0, mu.pop() if mu else k]


def atlas(n):
    return [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n]


def scan(n):
    out = []
    for G in atlas(n):
        if G.number_of_edges() == 0:
            continue
        A = adj(G)
        w = omega(G)
        s = sigma(A)
        gap = None if s is None else bool(w >= 2 and s < 1 + 1 / (w - 1) - 1e-6)
        out.append({
            "g6": nx.to_graph6_bytes(G, header=False).decode().strip(),
            "sigma": s,
            "omega": w,
            "connected": nx.is_connected(G),
            "gap": gap,
            "degrees": sorted(d for _, d in G.degree()),
        })
    return out


def main():
    out = {}
    out["rank3"] = {}
    for name, G in rank3_graphs().items():
        A = adj(G)
        out["rank3"][name] = {"srg": srg(G), "sigma": sigma(A), "omega": omega(G)}

    out["cycles"] = {str(n): sigma(adj(nx.cycle_graph(n))) for n in (5, 6, 7, 8, 9)}
    out["wheel6_sigma"] = sigma(adj(nx.wheel_graph(6)))

    H = np.array([[1, -1, 1, 1, -1], [-1, 1, -1, 1, 1], [1, -1, 1, -1, 1], [1, 1, -1, 1, -1], [-1, 1, 1, -1, 1]], float)
    out["horn_spn_shift_identity"] = spn_shift(H, np.eye(5))
    out["horn_spn_shift_ones"] = spn_shift(H, np.ones((5, 5)))

    out["theta0"] = {
        "c5-complement": theta0(adj(nx.complement(nx.cycle_graph(5)))),
        "c7": theta0(adj(nx.cycle_graph(7))),
        "petersen": theta0(adj(nx.petersen_graph())),
    }

    Ap = adj(nx.petersen_graph())
    J = np.ones((10, 10))
    out["petersen_pdec_shift"] = {str(t): pdec_shift(J, np.eye(10) - t * Ap) for t in (1.6, 1.9)}

    rng = np.random.default_rng(7)
    pairs = []
    for _ in range(6):
        n = 4
        A = rng.uniform(0.0, 1.0, (n, n))
        Bo = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        B = (Bo + Bo.conj().T) / 2
        np.fill_diagonal(A, rng.uniform(0.2, 1.0, n))
        np.fill_diagonal(B, np.diag(A))
        pairs.append({"A": A.tolist(), "re": B.real.tolist(), "im": B.imag.tolist(), "shift": pdec_shift(A, B)})
    out["pdec_pairs"] = pairs

    out["scan"] = {str(n): scan(n) for n in (5, 6)}
    (DATA / "oracles.json").write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
