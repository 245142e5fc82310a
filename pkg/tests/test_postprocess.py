import numpy as np
import pytest

from wavevem.analytic import ExactSolution, InterfaceProblem
from wavevem.assembly import DegreeMap, solve_interface_problem
from wavevem.mesh import ElementGeometry, Subdomain, generate_cartesian, generate_graded_aniso
from wavevem.postprocess import (
    compute_errors,
    exact_solution_norms,
    polygon_quadrature,
    sample_on_raster,
)
from wavevem.quadrature import polygon_rule
from wavevem.waves import make_element_basis

UNIT_SQUARE = ElementGeometry.from_loop([[0, 0], [1, 0], [1, 1], [0, 1]])


class TestPolygonQuadrature:
    def test_constant_gives_area(self):
        val = polygon_quadrature(UNIT_SQUARE, lambda p: np.ones(len(p)))
        assert val == pytest.approx(1.0, abs=1e-14)
        hexagon = ElementGeometry.from_loop(
            [[1, 0], [0.5, 0.9], [-0.5, 0.9], [-1, 0], [-0.5, -0.9], [0.5, -0.9]]
        )
        val = polygon_quadrature(hexagon, lambda p: np.ones(len(p)))
        assert val == pytest.approx(hexagon.area, rel=1e-14)

    def test_plane_wave_product_vs_tensor_gauss(self):
        """Tensor 40 x 40 Gauss on the unit square as the independent
        oracle for an oscillatory product at k = 7."""
        basis = make_element_basis(0, UNIT_SQUARE.centroid, 7.0, q=2)
        w1, w2 = basis.waves[1], basis.waves[3]
        f = lambda p: w1(p) * np.conj(w2(p))
        got = polygon_quadrature(UNIT_SQUARE, f, order=20)
        x, wx = np.polynomial.legendre.leggauss(40)
        t = 0.5 * (x + 1.0)
        X, Y = np.meshgrid(t, t, indexing="ij")
        W = 0.25 * np.outer(wx, wx)
        ref = np.sum(W.ravel() * f(np.column_stack([X.ravel(), Y.ravel()])))
        assert got == pytest.approx(ref, rel=1e-11)

    def test_gradient_difference_nonnegative(self):
        basis = make_element_basis(0, UNIT_SQUARE.centroid, 9.0, q=1)
        w1, w2 = basis.waves[0], basis.waves[2]

        def f(p):
            g = w1.grad(p) - w2.grad(p)
            return (np.abs(g) ** 2).sum(axis=1)

        val = polygon_quadrature(UNIT_SQUARE, f, order=20)
        assert val.real > 0
        assert abs(val.imag) < 1e-13 * val.real

    def test_non_star_shaped_rejected(self):
        with pytest.raises(ValueError, match="star-shaped"):
            polygon_rule(UNIT_SQUARE.vertices, center=[3.0, 3.0])


class TestErrors:
    def test_manufactured_solution_zero_error(self):
        problem = InterfaceProblem(k=4.0, n1=1.0, n2=1.0, theta_inc=2 * np.pi / 7)
        mesh = generate_cartesian(2)
        degrees = DegreeMap.per_subdomain(mesh, 3, 3, q_cut=3)
        sol = solve_interface_problem(mesh, problem, degrees)
        rep = compute_errors(sol)
        assert rep.err_h1_rel < 1e-9
        assert rep.err_l2_rel < 1e-9

    def test_zero_solution_normalization(self, tc1_problem, mesh4, degrees_q4):
        sol = solve_interface_problem(
            mesh4,
            tc1_problem,
            degrees_q4,
            g=lambda pts: np.zeros(len(pts), dtype=complex),
        )
        rep = compute_errors(sol)
        assert rep.err_h1_rel == pytest.approx(1.0, rel=1e-9)
        assert rep.err_l2_rel == pytest.approx(1.0, rel=1e-9)

    def test_quadrature_order_insensitivity(self, tc1_problem, mesh8):
        degrees = DegreeMap.per_subdomain(mesh8, 4, 4)
        sol = solve_interface_problem(mesh8, tc1_problem, degrees)
        r20 = compute_errors(sol, order=20)
        r40 = compute_errors(sol, order=40)
        assert r20.err_h1_rel == pytest.approx(r40.err_h1_rel, rel=1e-3)
        assert r20.err_l2_rel == pytest.approx(r40.err_l2_rel, rel=1e-3)

    def test_weighted_norm_dominates_l2(self, tc1_problem, mesh4, degrees_q4):
        """||v||_{1,k,E}^2 >= k^2 ||v||_{0,E}^2 holds per element, so the
        global weighted-H1 numerator dominates k_min * L2 numerator."""
        sol = solve_interface_problem(mesh4, tc1_problem, degrees_q4)
        exact = ExactSolution(tc1_problem)
        for el in mesh4.elements:
            coeffs = sol.projected_coefficients(el)
            basis = sol.bases[el.index]
            pts, wts = polygon_rule(el.geometry.vertices, el.centroid, order=20)
            e_val = exact(pts) - basis.eval_matrix(pts) @ coeffs
            e_grad = exact.grad(pts) - np.einsum(
                "mlc,l->mc", basis.grad_matrix(pts), coeffs
            )
            k_e = sol.locals[el.index].k_elem
            l2 = wts @ np.abs(e_val) ** 2
            h1k = wts @ (np.abs(e_grad) ** 2).sum(axis=1) + k_e**2 * l2
            assert h1k >= k_e**2 * l2 * (1 - 1e-12)

    def test_exact_norms_independent_of_resolution(self, tc1_problem):
        exact = ExactSolution(tc1_problem)
        h1a, l2a = exact_solution_norms(exact, order_per_wavelength=2.0)
        h1b, l2b = exact_solution_norms(exact, order_per_wavelength=3.5)
        assert h1a == pytest.approx(h1b, rel=1e-12)
        assert l2a == pytest.approx(l2b, rel=1e-12)

    def test_cut_elements_use_artificial_wavenumber(self, tc1_problem):
        mesh = generate_graded_aniso(1, 1.0 / 3.0)
        degrees = DegreeMap.per_subdomain(mesh, 4, 4, q_cut=4)
        sol = solve_interface_problem(mesh, tc1_problem, degrees)
        cut = next(el for el in mesh.elements if el.subdomain is Subdomain.CUT)
        assert sol.locals[cut.index].k_elem == pytest.approx(10.5)  # (14+7)/2


class TestRaster:
    def test_raster_matches_analytic_where_converged(self, tc1_problem):
        mesh = generate_cartesian(8)
        degrees = DegreeMap.per_subdomain(mesh, 5, 5)
        sol = solve_interface_problem(mesh, tc1_problem, degrees)
        pts, exact_vals, proj_vals = sample_on_raster(sol, n=41)
        assert pts.shape == (41 * 41, 2)
        err = np.max(np.abs(exact_vals - proj_vals)) / np.max(np.abs(exact_vals))
        rep = compute_errors(sol)
        assert err < 50 * rep.err_h1_rel
