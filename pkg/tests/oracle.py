"""Independent sympy reference for the urn quantities (test-only)."""
import sympy as sp


def replacement_matrix(counts, hook, m):
    k = len(counts)
    H = sp.Matrix(k, k, lambda j, l: m * counts[l] - m * (l == j) - m * (l == hook))
    A = sp.zeros(m * k, m * k)
    for r in range(m):
        block = H if r == 0 else H + m * sp.eye(k)
        A[r * k:(r + 1) * k, 0:k] = block
        for a in range(k):
            if r == 0 and m > 1:
                A[a, k + a] = m - 1
            if r >= 1:
                A[r * k + a, r * k + a] = -(m - r)
                if r < m - 1:
                    A[r * k + a, (r + 1) * k + a] = m - r - 1
    return A


def principal(A, lam):
    vecs = [v for val, _, vs in A.T.eigenvects() if val == lam for v in vs]
    v = vecs[0]
    return v / sum(v)


def covariance(A, v, lam):
    """Solve lam Q = A^T Q + Q A + lam A^T (diag v - v v^T) A by brute-force linear solve."""
    c = A.shape[0]
    syms = sp.symbols(f"q0:{c * c}")
    Q = sp.Matrix(c, c, lambda a, b: syms[min(a, b) * c + max(a, b)])
    E = lam * Q - (A.T * Q + Q * A + lam * A.T * (sp.diag(*v) - v * v.T) * A)
    sol = sp.solve(list(E), sorted(set(Q), key=str), dict=True)[0]
    return Q.subs(sol)
