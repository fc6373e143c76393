import random

import pytest

from gasp import kernel, lowering
from gasp._pykernel import enumerate_masks as pure_enumerate
from gasp._pykernel import eval_mask, proper_subsets_increasing
from gasp.harness import GenConfig, generate
from gasp.semantics import completion

try:
    from gasp import _ckernel
except ImportError:
    _ckernel = None

needs_compiled = pytest.mark.skipif(_ckernel is None, reason="compiled kernel not built")


class TestSubsetIterator:
    def test_empty_mask_has_no_proper_subsets(self):
        assert list(proper_subsets_increasing(0)) == []

    def test_complete_and_proper(self):
        mask = 0b101101
        got = list(proper_subsets_increasing(mask))
        assert len(got) == len(set(got)) == 2 ** mask.bit_count() - 1
        assert all(sub & mask == sub for sub in got)
        assert mask not in got

    def test_increasing_cardinality(self):
        sizes = [sub.bit_count() for sub in proper_subsets_increasing(0b1110101)]
        assert sizes == sorted(sizes)


class TestEvalMask:
    def test_agrees_with_ast_eval(self):
        rng = random.Random(5)
        for seed in range(120):
            program = generate(GenConfig(atom_count=4, rule_count=4, seed=seed))
            lp = lowering.lower(program)
            for mask in range(1 << lp.n):
                interp = lp.interpretation_of(mask)
                for r, rule in enumerate(program.rules):
                    assert eval_mask(lp, r, mask) == rule.body.eval(interp), (
                        seed, r, sorted(a.name for a in interp),
                    )
            if rng.random() < 0.2:  # tables with wide domains via completion
                comp = completion(program)
                lpc = lowering.lower(comp)
                for mask in range(1 << lpc.n):
                    interp = lpc.interpretation_of(mask)
                    for r, rule in enumerate(comp.rules):
                        assert eval_mask(lpc, r, mask) == rule.body.eval(interp)


@needs_compiled
class TestBackendAgreement:
    def test_random_programs_all_modes(self):
        for seed in range(250):
            program = generate(
                GenConfig(
                    atom_count=2 + seed % 4,
                    rule_count=seed % 7,
                    allow_disjunctive_heads=(seed % 3 == 0),
                    seed=seed,
                )
            )
            lp = lowering.lower(program)
            for mode in range(4):
                assert pure_enumerate(lp, mode) == _ckernel.enumerate_masks(lp, mode), (
                    seed, mode,
                )

    def test_completion_programs(self):
        for seed in range(40):
            program = generate(GenConfig(atom_count=4, rule_count=5, seed=seed))
            lp = lowering.lower(completion(program))
            for mode in range(4):
                assert pure_enumerate(lp, mode) == _ckernel.enumerate_masks(lp, mode)

    def test_width_guard(self):
        program = generate(GenConfig(atom_count=3, rule_count=2, seed=0))
        lp = lowering.lower(program)
        lp.n = 63  # simulate an oversized universe
        with pytest.raises(ValueError):
            _ckernel.enumerate_masks(lp, 0)
        assert kernel.backend_for(lp) == "pure"
        with pytest.raises(ValueError):
            kernel.backend_for(lp, "compiled")


class TestSelection:
    def test_backends_listed(self):
        assert "pure" in kernel.available_backends()

    def test_explicit_pure_request(self):
        program = generate(GenConfig(atom_count=3, rule_count=3, seed=1))
        lp = lowering.lower(program)
        assert kernel.enumerate_masks(lp, 0, "pure") == pure_enumerate(lp, 0)
