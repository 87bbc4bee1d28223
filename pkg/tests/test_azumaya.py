import random
from fractions import Fraction

import pytest

from nctoric.azumaya import (MorphismData, QuasiHomChart, a1_probe,
                             check_gluing_pair, check_quasi_hom, eval_word,
                             graph_of_morphism, idem_classify,
                             image_kernel_bounded, sample_matrix_model,
                             surrogate_basis, verify_morphism)
from nctoric.deltasystem import build_system
from nctoric.errors import (BadFactorization, NotIdempotent,
                            PatternIncomplete)
from nctoric.exactmath import (GaussRational, ONE, ZERO, format_gauss,
                               qim_from_rows, qim_identity, qim_is_zero, qim_mul,
                               qim_eq, qim_rank, qim_scale, qim_sub, qim_zero,
                               qi_solve, qim_add)
from nctoric.freeword import identity_word, parse_word, word_mul
from nctoric.ncalgebra import AlgElem
from nctoric.toricfan import validate_fan
from oracles import random_matrix

M = qim_from_rows


def W(text, rank):
    return parse_word(text, rank)


def fan_p1():
    return validate_fan(1, [(1,), (-1,)], [(0,), (1,)])


def fan_single(n=2):
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return validate_fan(n, rays, [tuple(range(n))])


def p1_brane(a=3, b=Fraction(1, 2)):
    fan = fan_p1()
    system = build_system(fan)
    z = W("z1", 1)
    zi = W("z1^-1", 1)
    charts = {
        (0,): QuasiHomChart(cone=(0,), identity_image=M([[1, 0], [0, 0]]),
                            images={z: M([[a, 0], [0, 0]])}),
        (1,): QuasiHomChart(cone=(1,), identity_image=M([[0, 0], [0, 1]]),
                            images={zi: M([[0, 0], [0, b]])}),
        (): QuasiHomChart(cone=(), identity_image=qim_zero(2),
                          images={z: qim_zero(2), zi: qim_zero(2)}),
    }
    return MorphismData(rank_r=2, system=system, charts=charts), system


class TestQuasiHom:
    def test_zero_chart_valid(self):
        chart = QuasiHomChart(cone=(), identity_image=qim_zero(2),
                              images={W("z1", 2): qim_zero(2)})
        assert check_quasi_hom(chart).ok

    def test_identity_idempotent_free_chart(self):
        rng = random.Random(1)
        chart = QuasiHomChart(cone=(0, 1), identity_image=qim_identity(3),
                              images={W("z1", 2): random_matrix(rng, 3),
                                      W("z2", 2): random_matrix(rng, 3)})
        assert check_quasi_hom(chart).ok

    def test_unabsorbed_image_invalid(self):
        e = M([[1, 0], [0, 0]])
        g = M([[0, 0], [0, 1]])
        chart = QuasiHomChart(cone=(0,), identity_image=e, images={W("z1", 2): g})
        report = check_quasi_hom(chart)
        assert not report.ok
        assert report.failures()[0].clause == "Def 4.2.1"

    def test_eval_word(self):
        a = M([[2, 1], [0, 1]])
        chart = QuasiHomChart(cone=(0, 1), identity_image=qim_identity(2),
                              images={W("z1", 2): a})
        w = W("z1 z1", 2)
        assert qim_eq(eval_word(chart, w, [(W("z1", 2), False)] * 2), qim_mul(a, a))
        assert qim_eq(eval_word(chart, identity_word(2), []), qim_identity(2))
        with pytest.raises(BadFactorization):
            eval_word(chart, w, [(W("z1", 2), False)])


class TestGluingPair:
    def test_zero_lower_always_glues(self):
        fan = fan_single()
        system = build_system(fan)
        rng = random.Random(2)
        upper = QuasiHomChart(cone=(0, 1), identity_image=qim_identity(2),
                              images={g: random_matrix(rng, 2)
                                      for g in system.charts[(0, 1)].generators})
        lower = QuasiHomChart(cone=(0,), identity_image=qim_zero(2),
                              images={g: qim_zero(2)
                                      for g in system.charts[(0,)].generators})
        assert check_gluing_pair(system, upper, lower).ok

    def test_equal_idempotents_with_corner_extension(self):
        fan = fan_p1()
        system = build_system(fan)
        e = qim_identity(2)
        a = M([[2, 0], [0, 3]])
        ainv = M([[Fraction(1, 2), 0], [0, Fraction(1, 3)]])
        z, zi = W("z1", 1), W("z1^-1", 1)
        upper = QuasiHomChart(cone=(0,), identity_image=e, images={z: a})
        lower = QuasiHomChart(cone=(), identity_image=e,
                              images={z: a, zi: ainv},
                              witnesses={z: ainv, zi: a})
        assert check_gluing_pair(system, upper, lower).ok

    def test_noncentralizing_image_fails(self):
        fan = fan_single()
        system = build_system(fan)
        rng = random.Random(9)
        e_lo = M([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        found = False
        for _ in range(30):
            a = random_matrix(rng, 3)
            if not qim_eq(qim_mul(a, e_lo), qim_mul(e_lo, a)):
                found = True
                break
        assert found
        upper = QuasiHomChart(cone=(0, 1), identity_image=qim_identity(3),
                              images={g: a for g in system.charts[(0, 1)].generators})
        lower = QuasiHomChart(cone=(0,), identity_image=e_lo,
                              images={g: qim_mul(qim_mul(e_lo, a), e_lo)
                                      for g in system.charts[(0,)].generators})
        report = check_gluing_pair(system, upper, lower)
        assert any(f.clause == "Def 4.2.3(b)" for f in report.failures())


class TestIdemClassify:
    def test_p1_two_points(self):
        fan = fan_p1()
        idem = idem_classify(fan, {(0,): M([[1, 0], [0, 0]]),
                                   (1,): M([[0, 0], [0, 1]]),
                                   (): qim_zero(2)})
        assert idem.strong and idem.weak and idem.complete
        assert qim_eq(idem.reduced[(0,)], M([[1, 0], [0, 0]]))
        assert qim_eq(idem.reduced[(1,)], M([[0, 0], [0, 1]]))
        assert qim_is_zero(idem.reduced[()])

    def test_single_cone_full(self):
        fan = fan_single()
        pattern = {c: (qim_identity(2) if c == (0, 1) else qim_zero(2))
                   for c in fan.faces}
        idem = idem_classify(fan, pattern)
        assert idem.strong and idem.complete
        assert qim_eq(idem.reduced[(0, 1)], qim_identity(2))

    def test_shared_corner_not_complete(self):
        fan = fan_p1()
        e = M([[1, 0], [0, 0]])
        idem = idem_classify(fan, {(0,): e, (1,): e, (): e})
        assert idem.strong
        assert not idem.complete
        assert qim_is_zero(idem.reduced[(0,)])
        assert qim_is_zero(idem.reduced[(1,)])
        assert qim_eq(idem.reduced[()], e)

    def test_not_idempotent(self):
        fan = fan_p1()
        with pytest.raises(NotIdempotent):
            idem_classify(fan, {(0,): M([[1, 1], [0, 1]]),
                                (1,): qim_zero(2), (): qim_zero(2)})

    def test_random_eigenbasis_systems(self):
        # strong systems built from a common eigenbasis splitting: the
        # classifier must recover the planted reduced idempotents exactly
        rng = random.Random(77)
        fan = fan_p1()
        faces = list(fan.faces)
        for _ in range(30):
            while True:
                p = random_matrix(rng, 4)
                if qim_rank(p) == 4:
                    break
            pi = _matrix_inverse(p)
            assign = [rng.randrange(len(faces) + 1) for _ in range(4)]
            planted = {}
            for fi, face in enumerate(faces):
                diag = [[ONE if (i == j and assign[i] == fi) else ZERO
                         for j in range(4)] for i in range(4)]
                planted[face] = qim_mul(qim_mul(p, diag), pi)
            idem_input = {}
            for face in faces:
                acc = qim_zero(4)
                for sub in faces:
                    if set(sub) <= set(face):
                        acc = qim_add(acc, planted[sub])
                idem_input[face] = acc
            idem = idem_classify(fan, idem_input)
            assert idem.strong
            for face in faces:
                assert qim_eq(idem.reduced[face], planted[face])
            complete_expected = all(a < len(faces) for a in assign)
            assert idem.complete == complete_expected

    def test_subordination_transitive_in_matrix_algebra(self):
        rng = random.Random(55)
        for _ in range(40):
            # nested diagonal idempotents conjugated by a fixed basis change
            p = None
            while p is None or qim_rank(p) < 3:
                p = random_matrix(rng, 3)
            pinv = _matrix_inverse(p)
            sizes = sorted(rng.sample(range(4), 3))
            es = []
            for s in sizes:
                diag = [[ONE if (i == j and i < s) else ZERO for j in range(3)]
                        for i in range(3)]
                es.append(qim_mul(qim_mul(p, diag), pinv))
            e1, e2, e3 = es
            assert qim_eq(qim_mul(e1, e2), e1) and qim_eq(qim_mul(e2, e1), e1)
            assert qim_eq(qim_mul(e2, e3), e2) and qim_eq(qim_mul(e3, e2), e2)
            assert qim_eq(qim_mul(e1, e3), e1) and qim_eq(qim_mul(e3, e1), e1)


def _matrix_inverse(p):
    r = len(p)
    cols = [[p[i][j] for i in range(r)] for j in range(r)]
    out_cols = []
    for k in range(r):
        target = [ONE if i == k else ZERO for i in range(r)]
        sol = qi_solve(cols, target)
        assert sol is not None
        out_cols.append(sol)
    return [[out_cols[j][i] for j in range(r)] for i in range(r)]


class TestVerifyMorphism:
    def test_tuple_matrix_model(self):
        fan = fan_single()
        system = build_system(fan)
        rng = random.Random(4)
        images = {g: random_matrix(rng, 2)
                  for g in system.charts[(0, 1)].generators}
        charts = {(0, 1): QuasiHomChart(cone=(0, 1),
                                        identity_image=qim_identity(2),
                                        images=images)}
        for cone in fan.faces:
            if cone == (0, 1):
                continue
            charts[cone] = QuasiHomChart(
                cone=cone, identity_image=qim_zero(2),
                images={g: qim_zero(2) for g in system.charts[cone].generators})
        morphism = MorphismData(rank_r=2, system=system, charts=charts)
        assert verify_morphism(morphism).ok

    def test_p1_brane(self):
        morphism, _ = p1_brane()
        report = verify_morphism(morphism)
        assert report.ok, report.to_text()

    def test_p1_brane_identity_zero_cone_fails_completeness(self):
        morphism, system = p1_brane()
        charts = dict(morphism.charts)
        charts[()] = QuasiHomChart(
            cone=(), identity_image=qim_identity(2),
            images={g: qim_zero(2) for g in system.charts[()].generators})
        bad = MorphismData(rank_r=2, system=system, charts=charts)
        report = verify_morphism(bad)
        assert not report.ok
        assert any(f.clause == "Def 4.2.9(ii)" for f in report.failures())

    def test_centralizer_on_words(self):
        # condition (b) on generators extends to every evaluated product
        morphism, system = p1_brane()
        chart = morphism.charts[(0,)]
        e_lo = morphism.charts[()].identity_image
        z = W("z1", 1)
        val = eval_word(chart, W("z1^3", 1), [(z, False)] * 3)
        assert qim_eq(qim_mul(val, e_lo), qim_mul(e_lo, val))


class TestSurrogate:
    def test_idempotents_only(self):
        fan = fan_p1()
        system = build_system(fan)
        z, zi = W("z1", 1), W("z1^-1", 1)
        charts = {
            (0,): QuasiHomChart(cone=(0,), identity_image=M([[1, 0], [0, 0]]),
                                images={z: qim_zero(2)}),
            (1,): QuasiHomChart(cone=(1,), identity_image=M([[0, 0], [0, 1]]),
                                images={zi: qim_zero(2)}),
            (): QuasiHomChart(cone=(), identity_image=qim_zero(2),
                              images={z: qim_zero(2), zi: qim_zero(2)}),
        }
        morphism = MorphismData(rank_r=2, system=system, charts=charts)
        basis = surrogate_basis(morphism)
        assert len(basis) == 2   # identity and the diagonal idempotent

    def test_p1_brane_diagonal(self):
        morphism, _ = p1_brane()
        assert len(surrogate_basis(morphism)) == 2

    def test_generic_pair_generates_full_algebra(self):
        fan = fan_single()
        system = build_system(fan)
        a = M([[1, 1], [0, 1]])
        b = M([[1, 0], [1, 0]])
        gens = list(system.charts[(0, 1)].generators)
        charts = {(0, 1): QuasiHomChart(cone=(0, 1),
                                        identity_image=qim_identity(2),
                                        images={gens[0]: a, gens[1]: b})}
        for cone in fan.faces:
            if cone == (0, 1):
                continue
            charts[cone] = QuasiHomChart(
                cone=cone, identity_image=qim_zero(2),
                images={g: qim_zero(2) for g in system.charts[cone].generators})
        morphism = MorphismData(rank_r=2, system=system, charts=charts)
        assert len(surrogate_basis(morphism)) == 4


class TestKernel:
    def test_zero_chart_kernel_contains_letters(self):
        morphism, system = p1_brane()
        ideal = image_kernel_bounded(morphism, (), 2)
        words_in_kernel = set()
        for g in ideal.generators:
            words_in_kernel |= set(g.terms)
        z = W("z1", 1)
        assert z in words_in_kernel or any(
            len(w) >= 1 for w in words_in_kernel)

    def test_diagonal_point(self):
        fan = validate_fan(1, [(1,)], [(0,)])
        system = build_system(fan)
        z, zi = W("z1", 1), W("z1^-1", 1)
        charts = {
            (0,): QuasiHomChart(cone=(0,), identity_image=qim_identity(2),
                                images={z: M([[1, 0], [0, 2]])}),
            (): QuasiHomChart(cone=(), identity_image=qim_zero(2),
                              images={z: qim_zero(2), zi: qim_zero(2)}),
        }
        morphism = MorphismData(rank_r=2, system=system, charts=charts)
        ideal = image_kernel_bounded(morphism, (0,), 2)
        assert len(ideal.generators) == 1
        gen = ideal.generators[0]
        lead = gen.terms[W("z1^2", 1)]
        normalized = gen.scale(lead.inverse())
        assert normalized == AlgElem(1, {W("z1^2", 1): ONE,
                                         z: GaussRational(-3),
                                         identity_word(1): GaussRational(2)})

    def test_matrix_point_relations(self):
        # z_ij -> e_ij on four letters; the kernel at bound 2 spans every
        # matrix-unit relation
        fan = fan_single(4)
        system = build_system(fan)
        r = 2

        def unit_matrix(i, j):
            return [[ONE if (x == i and y == j) else ZERO for y in range(r)]
                    for x in range(r)]

        letter_of = {}
        images = {}
        for i in range(r):
            for j in range(r):
                idx = 2 * i + j + 1
                w = W(f"z{idx}", 4)
                letter_of[(i, j)] = w
                images[w] = unit_matrix(i, j)
        sigma = tuple(range(4))
        charts = {sigma: QuasiHomChart(cone=sigma, identity_image=qim_identity(r),
                                       images=images)}
        for cone in fan.faces:
            if cone == sigma:
                continue
            charts[cone] = QuasiHomChart(
                cone=cone, identity_image=qim_zero(r),
                images={g: qim_zero(r) for g in system.charts[cone].generators})
        morphism = MorphismData(rank_r=r, system=system, charts=charts)
        ideal = image_kernel_bounded(morphism, sigma, 2)
        kernel_cols = []
        basis_words = sorted({w for g in ideal.generators for w in g.terms},
                             key=lambda w: w.sort_key())
        index = {w: k for k, w in enumerate(basis_words)}
        for g in ideal.generators:
            col = [ZERO] * len(basis_words)
            for w, c in g.terms.items():
                col[index[w]] = c
            kernel_cols.append(col)
        for (i, j) in letter_of:
            for (ip, jp) in letter_of:
                rel = AlgElem.from_word(
                    word_mul(letter_of[(i, j)], letter_of[(ip, jp)]))
                if j == ip:
                    rel = rel - AlgElem.from_word(letter_of[(i, jp)])
                target = [ZERO] * len(basis_words)
                ok = True
                for w, c in rel.terms.items():
                    if w not in index:
                        ok = False
                        break
                    target[index[w]] = c
                assert ok
                assert qi_solve(kernel_cols, target) is not None

    def test_graph_action(self):
        morphism, _ = p1_brane()
        graph = graph_of_morphism(morphism, 2)
        z = W("z1", 1)
        assert qim_eq(graph[(0,)][z], morphism.charts[(0,)].images[z])


class TestProbe:
    def test_corner_idempotents(self):
        for r in (2, 3):
            eii = [[ONE if (i == 0 and j == 0) else ZERO for j in range(r)]
                   for i in range(r)]
            result = a1_probe(eii)
            assert [format_gauss(c) for c in result.minpoly] == ["0", "-1", "1"]
            fibers = {format_gauss(root): dim for root, dim in result.fibers}
            assert fibers == {"0": r * r - r, "1": r}

    def test_offdiagonal_nilpotent(self):
        result = a1_probe(M([[0, 1], [0, 0]]))
        assert [format_gauss(c) for c in result.minpoly] == ["0", "0", "1"]
        assert result.fibers == ((ZERO, 2),)

    def test_identity(self):
        result = a1_probe(qim_identity(3))
        assert [format_gauss(c) for c in result.minpoly] == ["-1", "1"]
        assert result.fibers[0][1] == 9

    def test_gaussian_and_fractional_eigenvalues(self):
        a = M([[GaussRational(1, 2), 0], [0, 3]])
        result = a1_probe(a)
        assert {format_gauss(root) for root, _ in result.fibers} == {"1+2i", "3"}
        assert all(dim == 2 for _, dim in result.fibers)
        rotation = M([[0, -1], [1, 0]])
        result = a1_probe(rotation)
        assert {format_gauss(root) for root, _ in result.fibers} == {"i", "-i"}
        b = M([[Fraction(1, 2), 0], [0, Fraction(2, 3)]])
        result = a1_probe(b)
        assert {format_gauss(root) for root, _ in result.fibers} == {"1/2", "2/3"}

    def test_rank_deficiency_sums_on_diagonal_samples(self):
        rng = random.Random(21)
        for _ in range(20):
            r = rng.randint(2, 4)
            diag = [GaussRational(rng.randint(-2, 2), rng.randint(-1, 1))
                    for _ in range(r)]
            a = [[diag[i] if i == j else ZERO for j in range(r)] for i in range(r)]
            result = a1_probe(a)
            assert not result.unresolved_factor
            deficiency = 0
            for root, dim in result.fibers:
                shifted = qim_sub(a, qim_scale(root, qim_identity(r)))
                deficiency += r - qim_rank(shifted)
                assert dim == r * r - r * qim_rank(shifted)
            assert deficiency == r


class TestSampler:
    def test_trivial_pattern_samples(self):
        fan = fan_single()
        system = build_system(fan)
        for seed in range(8):
            morphism = sample_matrix_model(fan, system, 2, "trivial", seed)
            assert verify_morphism(morphism).ok

    def test_p1_pattern_samples(self):
        fan = fan_p1()
        system = build_system(fan)
        pattern = {(0,): M([[1, 0], [0, 0]]), (1,): M([[0, 0], [0, 1]]),
                   (): qim_zero(2)}
        for seed in range(8):
            morphism = sample_matrix_model(fan, system, 2, pattern, seed)
            assert verify_morphism(morphism).ok

    def test_r1_commutative_points(self):
        fan = validate_fan(2, [(1, 0), (0, 1), (-1, -1)],
                           [(0, 1), (1, 2), (0, 2)])
        system = build_system(fan)
        pattern = {c: (qim_identity(1) if c == (1, 2) else qim_zero(1))
                   for c in fan.faces}
        morphism = sample_matrix_model(fan, system, 1, pattern, 11)
        assert verify_morphism(morphism).ok

    def test_incomplete_pattern_rejected(self):
        fan = fan_p1()
        system = build_system(fan)
        e = M([[1, 0], [0, 0]])
        with pytest.raises(PatternIncomplete):
            sample_matrix_model(fan, system, 2, {(0,): e, (1,): e, (): e}, 0)

    def test_trivial_pattern_multi_cone_rejected(self):
        fan = fan_p1()
        system = build_system(fan)
        with pytest.raises(PatternIncomplete):
            sample_matrix_model(fan, system, 2, "trivial", 0)

    def test_nonzero_zero_cone_corner(self):
        fan = validate_fan(1, [(1,)], [(0,)])
        system = build_system(fan)
        pattern = {(0,): qim_identity(2), (): M([[1, 0], [0, 0]])}
        morphism = sample_matrix_model(fan, system, 2, pattern, 7)
        assert verify_morphism(morphism).ok

    def test_quadric_fan_shared_generators(self):
        # adjacent charts share dual generators; the sampled images must
        # restrict consistently through every shared face
        fan = validate_fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1)],
                           [(0, 1), (1, 2), (2, 3), (0, 3)])
        system = build_system(fan)
        shared = (set(system.charts[(0, 1)].generators)
                  & set(system.charts[(0, 3)].generators))
        assert shared
        reduced = {c: qim_zero(3) for c in fan.faces}
        reduced[(0, 1)] = M([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        reduced[(2, 3)] = M([[0, 0, 0], [0, 1, 0], [0, 0, 1]])
        pattern = {}
        for cone in fan.faces:
            acc = qim_zero(3)
            for sub in fan.faces:
                if set(sub) <= set(cone):
                    acc = qim_add(acc, reduced[sub])
            pattern[cone] = acc
        for seed in (0, 1):
            morphism = sample_matrix_model(fan, system, 3, pattern, seed)
            assert verify_morphism(morphism).ok
