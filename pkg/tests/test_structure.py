import pytest

from fanlab import corpus, structure
from fanlab.fan import link, walls
from fanlab.istheory import Divisor, intersection_number
from fanlab.structure import (ConstructionError, FourCycle,
                              MethodDisagreement, PreconditionError,
                              all_rays_in_4cycles, antipode_partner,
                              detect_cross_polytope, flat_link,
                              four_cycle_from_flat_wall, pcone_dichotomy,
                              pdover2_certificates, special_block_cover,
                              special_rays, suspension_structure,
                              verify_4cycle_side_structure)


def wall_by_tau(fan, tau):
    return next(w for w in walls(fan) if w.tau == tuple(sorted(tau)))


def test_special_rays_sq2(sq2):
    rep = special_rays(sq2, (0,), (0,))
    assert rep.special == (1, 3)
    assert rep.non_special == ()
    assert rep.subspace.dim == 1
    assert rep.perp_ok


def test_special_rays_pent(pent):
    rep = special_rays(pent, (4,), (4,))
    assert rep.special == ()
    assert rep.non_special == (0, 1)


def test_special_rays_cp4(cp4):
    rep = special_rays(cp4, (0,), (0,))
    assert len(rep.special) == 6
    assert rep.subspace.dim == 3
    assert set(rep.per_cone_counts) == {3}


def test_special_rays_sq2xpent_mixed():
    # hand oracle: qualifying walls for a pentagon-factor ray span the SQ2
    # plane plus the ray's own direction, so exactly the SQ2-factor rays
    # are special
    fan = corpus.sq2xpent()
    pent_ray = 4 + 4  # lifted pentagon ray (0, 0, 1, 1)
    assert fan.rays[pent_ray] == (0, 0, 1, 1)
    rep = special_rays(fan, (pent_ray,), (pent_ray,))
    assert rep.special == (0, 1, 2, 3)
    assert rep.subspace.dim == 2


def test_special_rays_pair_A_subsets(cp4):
    for A in [(0,), (1,), (0, 1)]:
        rep = special_rays(cp4, (0, 1), A)
        assert len(rep.special) == 4
        assert rep.uniform_count


def test_special_rays_rejects_non_locally_convex(p2fan):
    with pytest.raises(PreconditionError):
        special_rays(p2fan, (0,), (0,))
    rep = special_rays(p2fan, (0,), (0,), require_locally_convex=False)
    assert rep.special == ()


def test_special_rays_monotone_under_pcone_extension():
    # specials of lk(rho) restrict into specials of lk(pcone) w.r.t. rho
    for name in ("sq2", "cp4", "sq2xsq2", "sq2xpent"):
        fan = corpus.named(name)
        from fanlab.fan import faces

        for pcone in sorted(faces(fan)):
            if len(pcone) != 2:
                continue
            for rho in pcone:
                small = set(special_rays(fan, (rho,), (rho,)).special)
                big = special_rays(fan, pcone, (rho,))
                link_rays = set(big.special) | set(big.non_special)
                assert small & link_rays <= set(big.special), (name, pcone, rho)


def test_special_wall_crossing_closure():
    # an off-wall special ray crosses to a special ray
    for name in ("sq2", "cp4", "sq2xpent"):
        fan = corpus.named(name)
        for rho in range(fan.n_rays):
            rep = special_rays(fan, (rho,), (rho,))
            specials = set(rep.special)
            for w in walls(fan):
                if rho not in w.tau:
                    continue
                if w.gamma in specials:
                    assert w.gamma_prime in specials, (name, rho, w.tau)


def test_span_preservation_across_flat_crossings():
    from fanlab.exactlin import Subspace

    for name in ("sq2", "pent", "cp4", "sq2xpent"):
        fan = corpus.named(name)
        for w in walls(fan):
            for alpha in w.tau:
                if intersection_number(fan, Divisor.ray(fan, alpha), w) != 0:
                    continue
                left = Subspace.from_vectors(
                    [fan.rays[i] for i in w.sigma if i != alpha], fan.dim)
                right = Subspace.from_vectors(
                    [fan.rays[i] for i in w.sigma_prime if i != alpha], fan.dim)
                assert left == right, (name, w.tau, alpha)


def test_flat_link_sq2(sq2):
    rep = flat_link(sq2, (0,), (0,), ())
    assert rep.flat
    assert rep.subspace.dim == 1
    assert rep.subspace.contains((0, 1))


def test_flat_link_cp4(cp4):
    rep = flat_link(cp4, (0,), (0,), ())
    assert rep.flat and rep.subspace.dim == 3


def test_flat_link_pent_no_specials(pent):
    rep = flat_link(pent, (4,), (4,), (0,))
    assert not rep.flat
    assert rep.reason == "no special rays"


def test_flat_link_rejects_bad_M(cp4):
    with pytest.raises(PreconditionError):
        flat_link(cp4, (0,), (0,), (1,))  # special ray in M


def test_detect_cross_polytope(sq2, cp4, pent):
    assert detect_cross_polytope(sq2).pairing == ((0, 2), (1, 3))
    rep4 = detect_cross_polytope(cp4)
    assert rep4.pairing == ((0, 4), (1, 5), (2, 6), (3, 7))
    assert rep4.certified
    repp = detect_cross_polytope(pent)
    assert repp.pairing is None
    assert repp.witness == 0  # first ray with a nonvanishing conormal


def test_detect_cross_polytope_product(sq2xsq2):
    rep = detect_cross_polytope(sq2xsq2)
    assert rep.certified and len(rep.pairing) == 4


def test_antipode_partner_sq2(sq2):
    rep = antipode_partner(sq2, (0,), 0)
    assert rep.partner == 2
    assert rep.link_support_matches and rep.is_antipodal


def test_antipode_partner_cp4(cp4):
    rep = antipode_partner(cp4, (0, 1), 0)
    assert rep.partner == 4
    assert rep.link_support_matches and rep.is_antipodal


def test_antipode_partner_precondition(pent):
    with pytest.raises(PreconditionError):
        antipode_partner(pent, (4,), 4)


def test_suspension_structure_sq2(sq2):
    dec = suspension_structure(sq2, 0)
    assert dec.core.dim == 1 and dec.pairs == () and dec.valid


def test_suspension_structure_cp4(cp4):
    dec = suspension_structure(cp4, 0)
    assert dec.core.dim == 3 and dec.pairs == () and dec.valid


def test_suspension_structure_sq2xpent():
    # hand oracle: the link of a lifted pentagon ray is the SQ2 factor
    # (special core, dimension 2) suspended by the two pentagon neighbours
    fan = corpus.sq2xpent()
    dec = suspension_structure(fan, 8)  # ray (0, 0, 1, 1), pentagon r4
    assert dec.core.dim == 2
    assert dec.core_rays == (0, 1, 2, 3)
    assert dec.pairs == ((4, 5),)  # lifted pentagon rays r0 = (0,0,1,0), r1 = (0,0,0,1)
    assert dec.valid


def test_special_block_cover_sq2(sq2):
    rep = special_block_cover(sq2)
    assert rep.centers[1] == (0, 2)
    assert not rep.structure_failures and not rep.sharing_failures


def test_special_block_cover_cp4(cp4):
    rep = special_block_cover(cp4)
    for gamma, centers in rep.centers.items():
        assert len(centers) == 6
    assert not rep.structure_failures and not rep.sharing_failures


def test_special_block_cover_pent(pent):
    # hand oracle: sum of self-coefficients is 12 - 3n = -3, so a locally
    # convex pentagon has exactly two flat corners; here rays 2 and 3,
    # whose whole links are special.  The strictly convex corners 0, 1, 4
    # have no special rays.
    rep = special_block_cover(pent)
    specials = {rho: special_rays(pent, (rho,), (rho,)).special
                for rho in range(5)}
    assert specials[2] == (1, 3) and specials[3] == (0, 2)
    assert specials[0] == specials[1] == specials[4] == ()
    assert rep.centers[0] == (3,) and rep.centers[1] == (2,)
    assert rep.centers[4] == ()
    assert not rep.structure_failures and not rep.sharing_failures


def test_pcone_dichotomy_examples(sq2, cp4):
    assert pcone_dichotomy(sq2, (0, 1)).case == "VANISHING_CONORMAL"
    assert pcone_dichotomy(cp4, (0, 1)).case == "VANISHING_CONORMAL"


def test_pcone_dichotomy_sq2xpent_pairs():
    from fanlab.fan import faces
    from fanlab.istheory import restrict_conormal

    fan = corpus.sq2xpent()
    for pcone in sorted(faces(fan)):
        if len(pcone) != 2:
            continue
        tag = pcone_dichotomy(fan, pcone)
        assert tag.case in ("VANISHING_CONORMAL", "TRIVIAL", "FLAT_SUBSPACE",
                            "ALL_NONSPECIAL_SUSPENSION"), (pcone, tag)
        # oracle: the tag's dimension data must match a direct polytope
        # computation of the summed conormal restriction
        if tag.case == "FLAT_SUBSPACE":
            poly = restrict_conormal(fan, pcone, pcone).polytope()
            assert poly.dim <= fan.dim - 2 - 1
        if tag.case == "VANISHING_CONORMAL":
            j = tag.data
            poly = restrict_conormal(fan, pcone, (j,)).polytope()
            assert poly.dim == 0


def test_pcone_dichotomy_trivial_on_mutually_special_pairs():
    # in a pentagon product, mixed pairs pair a ray with a member of its
    # special plane and are classified TRIVIAL unless a conormal vanishes
    from collections import Counter

    from fanlab.fan import faces

    pp = corpus.product(corpus.pent(), corpus.pent())
    tags = Counter(pcone_dichotomy(pp, pcone).case
                   for pcone in sorted(faces(pp)) if len(pcone) == 2)
    assert tags == {"VANISHING_CONORMAL": 26, "TRIVIAL": 9}


def test_pdover2_certificates_cp4(cp4):
    certs = pdover2_certificates(cp4, (0, 1))
    assert len(certs) == 2
    for cert in certs:
        assert cert.threshold == 1
        assert cert.dims[0] == 0


def test_pdover2_certificates_sq2(sq2):
    certs = pdover2_certificates(sq2, (0,))
    assert len(certs) == 1
    assert certs[0].threshold == 1


def test_pdover2_certificates_sq2xsq2(sq2xsq2):
    certs = pdover2_certificates(sq2xsq2, (0, 4))
    assert all(c.threshold == 1 for c in certs)


def test_pdover2_rejects_nonzero_signature(pent):
    # the pentagon has signature -1, so the suite precondition fails
    with pytest.raises(PreconditionError):
        pdover2_certificates(pent, (4,))


def test_four_cycle_sq2(sq2):
    cycle = four_cycle_from_flat_wall(sq2, wall_by_tau(sq2, (0,)), 0)
    assert cycle.rays == (0, 1, 2, 3)
    assert cycle.verify(sq2) == (True, None)


def test_four_cycle_cp4(cp4):
    cycle = four_cycle_from_flat_wall(cp4, wall_by_tau(cp4, (0, 1, 2)), 0)
    # (e1, e4, -e1, -e4) up to canonical rotation
    assert set(cycle.rays) == {0, 3, 4, 7}
    assert cycle.verify(cp4) == (True, None)


def test_four_cycle_precondition_pent(pent):
    with pytest.raises(PreconditionError):
        four_cycle_from_flat_wall(pent, wall_by_tau(pent, (4,)), 4)


def test_four_cycle_construction_gap_on_pentagon(pent):
    # the wall at ray 2 is flat but a pentagon has no induced 4-cycles:
    # the candidate search must come up empty
    with pytest.raises(ConstructionError):
        four_cycle_from_flat_wall(pent, wall_by_tau(pent, (2,)), 2)


def test_four_cycle_canonical_form():
    c = FourCycle((2, 1, 0, 3))
    assert c.canonical().rays == (0, 1, 2, 3)
    assert FourCycle((0, 3, 2, 1)).canonical().rays == (0, 1, 2, 3)


def test_side_structure_sq2(sq2):
    rep = verify_4cycle_side_structure(sq2, wall_by_tau(sq2, (0,)), 0)
    assert rep.negative == ((2,),)
    assert rep.partner_intersection_zero
    assert not rep.violations


def test_side_structure_cp4(cp4):
    rep = verify_4cycle_side_structure(cp4, wall_by_tau(cp4, (0, 1, 2)), 0)
    assert rep.negative == ((1, 2, 4),)
    assert rep.partner_intersection_zero
    assert not rep.violations


def test_side_structure_rejects_p2(p2fan):
    with pytest.raises(PreconditionError):
        verify_4cycle_side_structure(p2fan, wall_by_tau(p2fan, (0,)), 0)


def test_all_rays_in_4cycles_sq2(sq2):
    cover = all_rays_in_4cycles(sq2)
    assert sorted(cover.witnessed) == [0, 1, 2, 3]
    assert not cover.unwitnessed


def test_all_rays_in_4cycles_cp4(cp4):
    cover = all_rays_in_4cycles(cp4)
    assert sorted(cover.witnessed) == list(range(8))
    for alpha, cycle in cover.witnessed.items():
        assert alpha in cycle.rays
        assert cycle.verify(cp4) == (True, None)


def test_all_rays_in_4cycles_pent(pent):
    cover = all_rays_in_4cycles(pent)
    assert not cover.witnessed
    reasons = dict(cover.unwitnessed)
    assert reasons[4] == "no_flat_wall"
    assert reasons[2] == "construction_failed"


def test_emitted_cycles_pass_induced_recheck():
    for name in ("sq2", "cp4", "sq2xsq2", "sq2xpent"):
        fan = corpus.named(name)
        cover = all_rays_in_4cycles(fan)
        for cycle in cover.cycles:
            assert cycle.verify(fan) == (True, None), (name, cycle)


def test_method_agreement_random_3d_fans():
    for seed in range(20):
        fan = corpus.random_subdivided_cp3(seed)
        for rho in range(fan.n_rays):
            special_rays(fan, (rho,), (rho,), require_locally_convex=False)
