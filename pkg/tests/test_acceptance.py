"""Acceptance gate: the twelve release criteria, one test per criterion.

Each test prints a single `criterion NN ...: PASS|FAIL` line (visible with
pytest -s, or in captured output on failure).  Tolerances are the stated
release numbers, not the library defaults.
"""

import itertools
from contextlib import contextmanager

import numpy as np
import pytest

from qg import catalog
from qg.corep import (Corep, decompose, is_kac, orthogonality_residuals,
                      q_matrix_antipode, q_matrix_gram, trivial_corep)
from qg.dualqg import (DualElement, big_w, build_dual, dual_comult_map, fourier,
                       fourier_inv, hhat_L, hhat_R, irr_data_from_host,
                       verify_dual_invariance)
from qg.errors import NoSolution
from qg.freestar import WordPoly, delta_well_defined, normal_form, validate_magic
from qg.hopfcore import (check_cancellation, find_antipode, gelfand_reconstruct,
                         grouplikes, verify_algebra, verify_coalgebra, verify_hopf)
from qg.measures import haar_cesaro, haar_solve
from qg.tenscore import linf


@contextmanager
def criterion(num: int, label: str):
    ok = False
    try:
        yield
        ok = True
    finally:
        print(f"criterion {num:02d} ({label}): {'PASS' if ok else 'FAIL'}")


@pytest.fixture(scope="module")
def group_irr_tables(hosts):
    from qg.corep import irr_table
    return {name: irr_table(hosts[f"cg_{name.lower()}"])
            for name in catalog.group_names()}


@pytest.fixture(scope="module")
def s3_dual_pack(s3_host, s3_haar):
    src = irr_data_from_host(s3_host)
    w = big_w(src)
    return src, w, dual_comult_map(w, s3_haar)


def _embedded_basis(alg):
    """E3[x] = the D x D matrix of flat basis element x in the block embedding."""
    d = sum(alg.sizes)
    e3 = np.zeros((alg.dim, d, d))
    for b, n in enumerate(alg.sizes):
        for i in range(n):
            for j in range(n):
                e3[alg.flat(b, i, j), alg.offsets[b] + i, alg.offsets[b] + j] = 1.0
    return e3


# ---------------------------------------------------------------------------


def test_criterion_01_axiom_suite(hosts):
    with criterion(1, "axiom suite"):
        for name, h in hosts.items():
            for rep in (verify_algebra(h.alg), verify_coalgebra(h.coalg),
                        verify_hopf(h)):
                assert rep.ok, (name, rep.failures())
                assert rep.max_residual <= 1e-9, (name, rep.max_residual)
            assert check_cancellation(h), name


def test_criterion_02_antipode_solver(hosts):
    with criterion(2, "antipode solver"):
        for name, h in hosts.items():
            s = find_antipode(h)
            assert linf(s - h.antipode) <= 1e-9, name
        with pytest.raises(NoSolution):
            find_antipode(catalog.idempotent_monoid_bialgebra())


def test_criterion_03_haar_agreement(hosts):
    with criterion(3, "haar agreement"):
        for name, h in hosts.items():
            solved = haar_solve(h)
            averaged = haar_cesaro(h, max_iter=10000, seed=0)
            assert averaged.iterations <= 10000
            assert linf(solved.state.coeffs - averaged.state.coeffs) <= 1e-6, name
            if name.startswith("cg_"):
                ident = np.zeros(h.dim)
                ident[0] = 1.0
                assert linf(solved.state.coeffs - ident) <= 1e-12, name


def test_criterion_04_representation_theory(groups, hosts, function_irr_tables):
    with criterion(4, "representation theory"):
        h = hosts["c_s3"]
        u = catalog.permutation_corep(groups["S3"], h)
        dec = decompose(u)
        assert sorted(rep.size for rep in dec.irreps) == [1, 2]

        rebuilt = np.zeros_like(u.coeffs)
        for s in dec.summands:
            rep = dec.irreps[s.irrep_id]
            block = np.einsum("mn,abc->manbc", np.eye(s.multiplicity), rep.coeffs)
            block = block.reshape(s.multiplicity * rep.size,
                                  s.multiplicity * rep.size, h.dim)
            rebuilt += np.einsum("pi,qj,ijc->pqc", s.intertwiner,
                                 np.conjugate(s.intertwiner), block)
        assert linf(rebuilt - u.coeffs) <= 1e-8

        for name, g in groups.items():
            table = function_irr_tables[name]
            assert sum(rep.size ** 2 for rep in table) == g.order, name


def test_criterion_05_orthogonality(groups, hosts, haar_states,
                                    function_irr_tables, group_irr_tables):
    with criterion(5, "orthogonality and Q-matrices"):
        for name in groups:
            for host_key, table in ((f"c_{name.lower()}", function_irr_tables[name]),
                                    (f"cg_{name.lower()}", group_irr_tables[name])):
                haar = haar_states[host_key]
                r1, r2 = orthogonality_residuals(table, haar)
                assert max(r1, r2) <= 1e-8, host_key
                for rep in table:
                    qg = q_matrix_gram(rep, haar)
                    qa = q_matrix_antipode(rep)
                    assert linf(qg.q - qa.q) <= 1e-8, host_key
                    assert linf(qg.q - np.eye(qg.size)) <= 1e-8, host_key
        for name, h in hosts.items():
            kac = is_kac(h)
            assert kac.is_kac, name
            assert (kac.q_trivial and kac.antipode_involutive
                    and kac.haar_tracial and kac.dims_match), name


def test_criterion_06_fourier(hosts):
    with criterion(6, "fourier transform"):
        for key in ("c_s3", "cg_z6"):
            h = hosts[key]
            src = irr_data_from_host(h)
            w = big_w(src)
            alg = w.alg
            haar = src.haar

            f_mat = np.zeros((alg.dim, h.dim), dtype=np.complex128)
            finv_mat = np.zeros((h.dim, alg.dim), dtype=np.complex128)
            for p in range(h.dim):
                f_mat[:, p] = alg.flatten(fourier(np.eye(h.dim)[p], w, haar))
            for x in range(alg.dim):
                finv_mat[:, x] = fourier_inv(alg.unflatten(np.eye(alg.dim)[x]), w)
            assert linf(finv_mat @ f_mat - np.eye(h.dim)) <= 1e-9, key
            assert linf(f_mat @ finv_mat - np.eye(alg.dim)) <= 1e-9, key

            f_unit = fourier(h.unit, w, haar)
            unit_flat = np.zeros(alg.dim)
            unit_flat[alg.flat(alg.trivial_block, 0, 0)] = 1.0
            assert linf(alg.flatten(f_unit) - unit_flat) <= 1e-9, key

            for b, rep in enumerate(src.irreps):
                qm = src.qmats[b]
                for i in range(rep.size):
                    for j in range(rep.size):
                        img = fourier(rep.coeffs[i, j, :], w, haar)
                        e_ji = np.zeros((rep.size, rep.size))
                        e_ji[j, i] = 1.0
                        expect = qm.q @ e_ji / qm.d
                        assert linf(img.block(b) - expect) <= 1e-9, key
                        for other in range(len(alg.sizes)):
                            if other != b:
                                assert linf(img.block(other)) <= 1e-9, key


def test_criterion_07_universal_morphism(s3_host, s3_haar, s3_dual_pack):
    from qg.dualqg import phi_from_corep

    with criterion(7, "universal morphism"):
        src, w, dmap = s3_dual_pack
        alg, h = w.alg, s3_host
        d_total = sum(alg.sizes)
        e3 = _embedded_basis(alg)

        phi_w = phi_from_corep(w.concrete, w, s3_haar, pairs=100)
        ident_tensor = np.einsum("xpq->pqx", e3)
        assert linf(phi_w.tensor - ident_tensor) <= 1e-9

        phi_triv = phi_from_corep(trivial_corep(h), w, s3_haar, pairs=100)
        assert linf(phi_triv.tensor[0, 0, :] - dmap.eps_hat) <= 1e-9

        wc = w.concrete.coeffs
        coeffs = np.einsum("abx,pqy,xyc->paqbc", wc, wc, h.mult)
        v23_13 = Corep(host=h, size=d_total ** 2,
                       coeffs=coeffs.reshape(d_total ** 2, d_total ** 2, h.dim),
                       unitary=True)
        phi_d = phi_from_corep(v23_13, w, s3_haar, pairs=100)
        comult_tensor = np.einsum("xuv,upq,vab->paqbx", dmap.c3, e3, e3)
        comult_tensor = comult_tensor.reshape(d_total ** 2, d_total ** 2, alg.dim)
        assert linf(phi_d.tensor - comult_tensor) <= 1e-9

        for phi in (phi_w, phi_triv, phi_d):
            res = {c.name: c.residual for c in phi.report.checks}
            assert res["intertwines-W"] <= 1e-9
            assert res["multiplicative"] <= 1e-8
            assert res["star-preserving"] <= 1e-8


def test_criterion_08_dual_structure(hosts, s3_haar, s3_dual_pack):
    with criterion(8, "dual structure"):
        src_s3, w_s3, dmap_s3 = s3_dual_pack
        z6 = hosts["cg_z6"]
        src_z6 = irr_data_from_host(z6)
        dmap_z6 = dual_comult_map(big_w(src_z6), src_z6.haar)

        for src, dmap in ((src_s3, dmap_s3), (src_z6, dmap_z6)):
            res = {c.name: c.residual for c in dmap.report.checks}
            assert res["coassociativity"] <= 1e-8
            assert res["counit-left"] <= 1e-8
            assert res["counit-right"] <= 1e-8
            inv = verify_dual_invariance(src)
            assert inv.ok
            assert inv.max_residual <= 1e-8

        from qg.dualqg import biduality_check
        assert biduality_check(hosts["cg_z3"])
        assert biduality_check(hosts["c_s3"])


def test_criterion_09_nonkac_witnesses():
    with criterion(9, "non-Kac witnesses"):
        src = catalog.synthetic_nonkac([(2, 2.0), (1, 1.0)])
        for qm in src.qmats:
            tr = np.trace(qm.q).real
            tr_inv = np.trace(np.linalg.inv(qm.q)).real
            assert tr == tr_inv
            assert tr >= qm.size

        alg = build_dual(src)
        rng = np.random.default_rng(0)
        for _ in range(100):
            x = alg.random_element(rng)
            qxq = DualElement(alg=alg, blocks={
                b: src.qmats[b].q @ x.block(b) @ src.qmats[b].q
                for b in range(len(alg.sizes))})
            assert abs(hhat_R(x) - hhat_L(qxq)) <= 1e-10

        witness = alg.basis_element(0, 0, 0)
        assert abs(hhat_L(witness) - hhat_R(witness)) >= 0.1


def test_criterion_10_rewriting():
    with criterion(10, "rewriting"):
        pres = catalog.suq2_presentation(0.5)
        letters = pres.letters
        rng = np.random.default_rng(0)
        for _ in range(500):
            word = tuple(rng.choice(letters)
                         for _ in range(int(rng.integers(0, 7))))
            nf = normal_form(WordPoly.monomial(word), pres)
            again = normal_form(nf, pres)
            assert (again - nf).max_coeff() == 0.0

        ga = normal_form(WordPoly.monomial(("g", "a")), pres)
        assert ga.terms == {("a", "g"): 2.0}
        asa = normal_form(WordPoly.monomial(("a*", "a")), pres)
        assert asa.terms == {(): 1.0, ("g*", "g"): -1.0}

        for q in (0.5, 1.0, 2.0):
            rep = delta_well_defined(catalog.suq2_presentation(q), degree_cap=6)
            assert rep.ok, q
        for n in (2, 3, 4):
            rep = delta_well_defined(catalog.sn_plus_presentation(n), degree_cap=6)
            assert rep.ok, n


def test_criterion_11_magic_unitaries():
    with criterion(11, "magic unitaries"):
        for perm in itertools.permutations(range(4)):
            assert validate_magic(np.eye(4)[list(perm)]).ok

        rng = np.random.default_rng(0)

        def projection():
            v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            v /= np.linalg.norm(v)
            return np.outer(v, np.conjugate(v))

        for _ in range(50):
            u = catalog.magic_block_example(projection(), projection())
            assert validate_magic(u).ok

        base = catalog.magic_block_example(projection(), projection())
        skew = base.copy()
        skew[0, 0] = skew[0, 0] + 0.1j * np.eye(2)          # not self-adjoint
        scaled = base.copy()
        scaled[1, 1] = 0.9 * scaled[1, 1]                   # not idempotent
        gap = base.copy()
        gap[2, 3] = np.zeros((2, 2))                        # row sum broken
        for mutant in (skew, scaled, gap):
            assert not validate_magic(mutant).ok


def test_criterion_12_reconstruction(groups, hosts):
    with criterion(12, "reconstruction"):
        for name, g in groups.items():
            rec = gelfand_reconstruct(hosts[f"c_{name.lower()}"])
            assert rec.order == g.order, name
            sigma = []
            for t in range(rec.order):
                chi = np.asarray(rec.characters[t])
                hit = int(np.argmax(np.abs(chi)))
                expect = np.zeros(g.order)
                expect[hit] = 1.0
                assert linf(chi - expect) <= 1e-9, name
                sigma.append(hit)
            assert sorted(sigma) == list(range(g.order)), name
            for a in range(rec.order):
                for b in range(rec.order):
                    assert sigma[rec.cayley[a, b]] == g.cayley[sigma[a]][sigma[b]], name
            assert sigma[rec.identity] == g.identity, name
            for a in range(rec.order):
                assert sigma[rec.inverse[a]] == g.inverse[sigma[a]], name

            gl = grouplikes(hosts[f"cg_{name.lower()}"])
            assert len(gl) == g.order, name
            basis = {tuple(np.round(v.real, 9)) for v in gl}
            assert len(basis) == g.order
            h = hosts[f"cg_{name.lower()}"]
            for v in gl:
                sv = h.antipode @ v
                assert any(linf(sv - u) <= 1e-9 for u in gl), name
            for v in gl:
                for u in gl:
                    prod = np.einsum("ijk,i,j->k", h.mult, v, u)
                    assert any(linf(prod - t) <= 1e-9 for t in gl), name
