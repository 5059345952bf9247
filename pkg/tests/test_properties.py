"""Property tests over randomly generated minimal models."""

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from sullivan.services.algebra import Polynomial
from sullivan.services.cohomology import model_complex
from sullivan.services.spectral import e0_report, early_page_check, r_stab, spectral_sequence
from sullivan.services.sullivan_model import SullivanModel, homogeneous_model, homogeneous_part, validate, word_lengths

BOUND = 12

RANDOM_MODELS = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])


@st.composite
def pure_models(draw):
    """Even generators with d = 0 and odd generators killing products of them.

    d of an odd generator lands in the subalgebra on even generators, so d² = 0
    holds and word length >= 2 keeps the model minimal.
    """

    evens = draw(st.lists(st.sampled_from([2, 4, 6]), min_size=0, max_size=2))
    odds = draw(st.lists(st.sampled_from([3, 5, 7]), min_size=1, max_size=4 - len(evens)))
    degrees = sorted(evens + odds)
    generators = [(f"{'y' if degree % 2 else 'x'}{i}", degree) for i, degree in enumerate(degrees)]
    base = SullivanModel.build("base", generators)
    values = {}
    for name, degree in generators:
        if degree % 2 == 0:
            continue
        candidates = [
            monomial
            for monomial in base.algebra.degree_basis(degree + 1)
            if monomial.word_length >= 2 and all(degrees[gid] % 2 == 0 for gid in monomial.generator_ids())
        ]
        coefficients = draw(st.lists(st.integers(-2, 2), min_size=len(candidates), max_size=len(candidates)))
        value = Polynomial({monomial: c for monomial, c in zip(candidates, coefficients) if c})
        if value:
            values[name] = value
    return SullivanModel.build("random", generators, values)


def _differential_over_earlier_generators(draw, degrees):
    generators = [(f"g{i}", degree) for i, degree in enumerate(degrees)]
    base = SullivanModel.build("base", generators)
    values = {}
    for i, (name, degree) in enumerate(generators):
        candidates = [
            monomial
            for monomial in base.algebra.degree_basis(degree + 1)
            if monomial.word_length >= 2 and all(gid < i for gid in monomial.generator_ids())
        ]
        coefficients = draw(st.lists(st.integers(-2, 2), min_size=len(candidates), max_size=len(candidates)))
        value = Polynomial({monomial: c for monomial, c in zip(candidates, coefficients) if c})
        if value:
            values[name] = value
    model = SullivanModel.build("random", generators, values)
    assume(validate(model).valid)
    return model


@st.composite
def admissible_models(draw):
    """Generators of any parity in degrees 2..8; d of each is any combination of earlier ones with d² = 0."""

    degrees = sorted(draw(st.lists(st.integers(2, 8), min_size=1, max_size=4)))
    return _differential_over_earlier_generators(draw, degrees)


@st.composite
def odd_models(draw):
    degrees = sorted(draw(st.lists(st.sampled_from([3, 5, 7, 9, 11]), min_size=1, max_size=4)))
    return _differential_over_earlier_generators(draw, degrees)


random_models = st.one_of(pure_models(), admissible_models())


@RANDOM_MODELS
@given(random_models)
def test_generated_models_are_valid(model):
    """The strategies only produce minimal models with d² = 0."""

    report = validate(model)

    assert report.valid, report.issues


@RANDOM_MODELS
@given(random_models)
def test_homogeneous_parts_recombine_and_square_to_zero(model):
    """d is the sum of its homogeneous parts d_i, and d_k is again a differential."""

    lengths = word_lengths(model)
    parts = [homogeneous_part(model, i) for i in lengths]
    for generator in model.generators:
        recombined = Polynomial.zero()
        for part in parts:
            recombined = recombined + part.value(generator.id)
        assert recombined == model.dg(generator.id)

    homogeneous = homogeneous_model(model)

    for generator in homogeneous.generators:
        assert not homogeneous.d(homogeneous.dg(generator.id))


@RANDOM_MODELS
@given(odd_models())
def test_odd_generators_only_have_even_length_differentials(model):
    """With V = V^odd every d_i of odd length vanishes, so k is even or d = 0."""

    assert all(length % 2 == 0 for length in word_lengths(model))
    for i in range(1, 7, 2):
        part = homogeneous_part(model, i)
        assert all(not part.value(generator.id) for generator in model.generators)


@RANDOM_MODELS
@given(random_models)
def test_page_differentials_square_to_zero_and_compute_next_page(model):
    """δ_r² = 0, dim E_r never grows with r, and H(E_r, δ_r) = E_{r+1}."""

    sequence = spectral_sequence(model)

    for r in range(1, r_stab(BOUND)):
        for p, q in sequence.bidegrees(BOUND):
            assert sequence.differential_squares_to_zero(r, p, q)
            current = sequence.page_entry(r, p, q).dimension
            following = sequence.page_entry(r + 1, p, q).dimension
            assert following <= current
            assert sequence.page_homology_dimension(r, p, q) == following


@RANDOM_MODELS
@given(random_models)
def test_pages_before_the_first_nontrivial_one_are_free(model):
    """E_1 = ... = E_{k-1} = ΛV; early_page_check raises otherwise."""

    assert early_page_check(model, BOUND) >= 1


@RANDOM_MODELS
@given(random_models)
def test_e_infinity_sums_to_cohomology(model):
    """Summing E_∞ along each total degree recovers dim H^n."""

    sequence = spectral_sequence(model)
    complex_ = model_complex(model)

    for n in range(BOUND + 1):
        column_total = sum(sequence.e_infinity(p, n - p).dimension for p in range(n // 2 + 1))
        assert column_total == complex_.dimension(n)


@RANDOM_MODELS
@given(random_models)
def test_e0_routes_agree(model):
    """Quotient and representative e0 agree on every class, and match the E_∞ column support."""

    assert e0_report(model, BOUND, complete=False).routes_agree
