// Command line interface: construct and verify (q-1)/2-ovoids of Q(4,q),
// inspect the group orbits, character counts and per-line case breakdowns.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "qovoid/charcount.hpp"
#include "qovoid/io.hpp"
#include "qovoid/orbits.hpp"
#include "qovoid/ovoid.hpp"

using namespace qovoid;

namespace {

struct Options {
    std::uint32_t p = 0;
    std::uint32_t k = 1;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string out = "-";
    std::string in;
    std::string format = "json";
    std::optional<std::uint32_t> t;
    std::optional<std::uint32_t> m;
    std::optional<int> case_filter;
};

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file: " + path);
    f << content;
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

// "p must be prime (did you mean --p 3 --k 2?)" for prime-power p.
std::string prime_message(std::uint64_t p, std::uint32_t k) {
    std::string msg = "p must be prime";
    for (std::uint64_t r = 2; r * r <= p; ++r) {
        if (p % r != 0) continue;
        std::uint64_t n = p;
        std::uint32_t e = 0;
        while (n % r == 0) {
            n /= r;
            ++e;
        }
        if (n == 1)
            msg += " (did you mean --p " + std::to_string(r) + " --k " +
                   std::to_string(e * k) + "?)";
        break;
    }
    return msg;
}

FieldCtx make_field(const Options& opt) {
    if (!FieldCtx::is_prime(opt.p)) throw NotPrimeError(prime_message(opt.p, opt.k));
    return FieldCtx(opt.p, opt.k);
}

// construct / verify / breakdown demand q = 1 (mod 4) and q > 5.
void check_construction_q(const FieldCtx& F) {
    const std::uint32_t q = F.q();
    if (q % 4 != 1)
        throw UnsupportedQError("q = " + std::to_string(q) +
                                " = 3 (mod 4): this construction needs q = 1 (mod 4)");
    if (q <= 5)
        throw UnsupportedQError("q = " + std::to_string(q) +
                                ": the component T is empty, q > 5 is required");
}

OvoidParams make_params(const FieldCtx& F, const Options& opt) {
    if (opt.t) {
        if (*opt.t >= F.q()) throw Error("--t must be an element encoding in [1, q)");
        return params_from_t(F, FqElem(*opt.t));
    }
    return find_ab(F);
}

int run_construct(const Options& opt) {
    const FieldCtx F = make_field(opt);
    check_construction_q(F);
    const OvoidParams params = make_params(F, opt);
    const PointSet pts = PointSet::enumerate(F);
    const OvoidSet M = construct_M(F, pts, params);
    const std::uint32_t m = (F.q() - 1) / 2;
    if (opt.format == "csv")
        write_output(opt.out, points_csv(F, pts, M.members));
    else
        write_output(opt.out, construct_json(F, pts, M, m));
    return 0;
}

int run_verify(const Options& opt) {
    const FieldCtx F = make_field(opt);
    check_construction_q(F);
    const PointSet pts = PointSet::enumerate(F);

    std::vector<PointIndex> S;
    std::uint32_t m = (F.q() - 1) / 2;
    if (!opt.in.empty()) {
        std::ifstream in(opt.in);
        if (!in) throw IoError("cannot open input file: " + opt.in);
        const PointSetDoc doc = read_point_set_json(in);
        if (doc.q != F.q())
            throw ParseError("input was generated for q = " + std::to_string(doc.q) +
                             ", not q = " + std::to_string(F.q()));
        if (doc.p && (*doc.p != F.p() || *doc.k != F.k()))
            throw ParseError("input field does not match --p/--k");
        std::vector<std::uint8_t> seen(pts.size(), 0);
        for (const VecV& v : doc.points) {
            const std::optional<PointIndex> idx = pts.find(normalize(F, v));
            if (!idx) throw ParseError("input contains a point not on Q(4,q)");
            if (seen[*idx]) throw ParseError("input contains a duplicate point");
            seen[*idx] = 1;
            S.push_back(*idx);
        }
        std::sort(S.begin(), S.end());
        if (doc.m) m = *doc.m;
    } else {
        S = construct_M(F, pts, make_params(F, opt)).members;
    }
    if (opt.m) m = *opt.m;

    const LineSet lines = LineSet::enumerate(F, pts, opt.workers);
    const OvoidReport rep = verify_m_ovoid(F, pts, S, m, lines, opt.workers);
    write_output(opt.out, report_json(rep));
    return rep.pass ? 0 : 1;
}

int run_orbits(const Options& opt) {
    const FieldCtx F = make_field(opt);
    const PointSet pts = PointSet::enumerate(F);
    const OrbitDecomposition dec = orbit_decomposition(F, pts);
    write_output(opt.out, orbits_json(F, pts, dec));
    return 0;
}

int run_counts(const Options& opt) {
    const FieldCtx F = make_field(opt);
    write_output(opt.out, counts_json(F, square_shift_counts(F)));
    return 0;
}

int run_breakdown(const Options& opt) {
    const FieldCtx F = make_field(opt);
    check_construction_q(F);
    const OvoidParams params = make_params(F, opt);
    const PointSet pts = PointSet::enumerate(F);
    const LineSet lines = LineSet::enumerate(F, pts, opt.workers);
    const OrbitDecomposition dec = orbit_decomposition(F, pts);
    const OvoidSet M = construct_M(F, pts, params);
    const CaseAnalysis cases(F, pts, dec, params);
    write_output(opt.out, breakdown_csv(F, pts, lines, M, cases, opt.case_filter));
    return 0;
}

int run_selftest(const Options& opt) {
    const FieldCtx F = make_field(opt);
    check_construction_q(F);
    const std::uint32_t q = F.q();
    const std::uint32_t half = (q - 1) / 2;

    bool all_pass = true;
    const auto report = [&](const std::string& name, bool ok, const std::string& note = "") {
        std::printf("%-52s %s%s%s\n", name.c_str(), ok ? "PASS" : "FAIL",
                    note.empty() ? "" : "  ", note.c_str());
        all_pass = all_pass && ok;
    };
    const auto check = [&](const std::string& name, auto&& fn) {
        try {
            fn();
            report(name, true);
        } catch (const std::exception& e) {
            report(name, false, e.what());
        }
    };
    const auto expect = [](bool cond, const std::string& msg) {
        if (!cond) throw Error(msg);
    };

    std::printf("self test for q = %u (p = %u, k = %u)\n", q, F.p(), F.k());

    check("field tables match polynomial arithmetic", [&] {
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) {
                expect(F.add(FqElem(a), FqElem(b)) == F.add_poly(FqElem(a), FqElem(b)),
                       "add table mismatch");
                expect(F.mul(FqElem(a), FqElem(b)) == F.mul_poly(FqElem(a), FqElem(b)),
                       "mul table mismatch");
            }
    });
    check("quadratic character is multiplicative", [&] {
        for (std::uint32_t x = 1; x < q; ++x)
            for (std::uint32_t y = 1; y < q; ++y)
                expect(F.quad_char(F.mul(FqElem(x), FqElem(y))) ==
                           F.quad_char(FqElem(x)) * F.quad_char(FqElem(y)),
                       "character not multiplicative");
        expect(F.quad_char(F.neg(1)) == 1, "-1 must be a square for q = 1 (mod 4)");
    });
    check("primitive element and gamma", [&] {
        const std::uint64_t n = std::uint64_t(q) * q - 1;
        expect(F.pow(F.omega(), n) == Fq2Elem{1, 0}, "omega^(q^2-1) != 1");
        for (const std::uint64_t r : prime_factors(n))
            expect(F.pow(F.omega(), n / r) != Fq2Elem{1, 0}, "omega order too small");
        expect(F.norm(F.gamma()) == F.neg(1), "gamma norm != -1");
    });

    const PointSet pts = PointSet::enumerate(F);
    const LineSet lines = LineSet::enumerate(F, pts, opt.workers);
    check("point and line counts equal (q+1)(q^2+1)", [&] {
        const std::uint64_t expect_n = std::uint64_t(q + 1) * (std::uint64_t(q) * q + 1);
        expect(pts.size() == expect_n && lines.size() == expect_n, "count mismatch");
    });
    check("group generator orders and |G| = q^2-1", [&] {
        const auto gens = generators(F);
        expect(element_order(F, gens[0]) == q - 1, "order of T_{lambda0,1}");
        expect(element_order(F, gens[1]) == (q + 1) / 2, "order of T_{1,mu0}");
        expect(element_order(F, gens[2]) == 2, "order of tau");
        expect(generator_closure(F).size() == std::uint64_t(q) * q - 1, "|G| mismatch");
    });

    const OrbitDecomposition dec = orbit_decomposition(F, pts);
    check("orbit census (1, 1, 1 exceptional; q-1 short; (q+3)/2 long)", [&] {
        expect(dec.count(OrbitClass::Exc2) == 1 && dec.count(OrbitClass::ExcConic) == 1 &&
                   dec.count(OrbitClass::ExcQPlus1) == 1 &&
                   dec.count(OrbitClass::Short) == q - 1 &&
                   dec.count(OrbitClass::Long) == (q + 3) / 2,
               "census mismatch");
    });
    check("character counts and census cross-check", [&] {
        const CharCounts c = square_shift_counts(F);
        expect(c.n1 == (q - 5) / 4 && c.n2 == (q - 1) / 4 && c.n3 == (q - 1) / 4 &&
                   c.n4 == (q - 1) / 4,
               "closed forms");
        census_cross_check(F, dec);
    });
    check("quadratic character sums match the closed form", [&] {
        for (std::uint32_t a2 = 1; a2 < q; ++a2) {
            // char_sum_quadratic throws if brute force != closed form.
            char_sum_quadratic(F, FqElem(a2), FqElem((a2 + 3) % q), FqElem((2 * a2 + 1) % q));
            char_sum_quadratic(F, FqElem(a2), 0, 0);
            char_sum_quadratic(F, FqElem(a2), 1, 0);
        }
    });
    check("short-orbit test agrees with orbit classes", [&] {
        for (PointIndex i = 0; i < pts.size(); ++i) {
            const VecV v = pts.vec(i);
            if (v.x == 0 || v.y == 0 || v.alpha == Fq2Elem{0, 0} || v.z == 0) continue;
            expect(is_short_predicate(F, ProjPoint{v}) ==
                       (dec.orbits[dec.orbit_id[i]].cls == OrbitClass::Short),
                   "predicate disagrees at point " + std::to_string(i));
        }
    });

    const OvoidParams params = make_params(F, opt);
    const OvoidSet M = construct_M(F, pts, params);
    check("component sizes, disjointness and |M| = (q-1)(q^2+1)/2", [&] {
        expect(M.members.size() == std::uint64_t(q - 1) * (std::uint64_t(q) * q + 1) / 2,
               "|M| mismatch");
    });
    check("M is invariant under the group and under sigma", [&] {
        for (const GroupElem& g : generators(F))
            for (const PointIndex i : M.members)
                expect(M.comp_tag[apply(F, pts, g, i)] != 0, "group image left M");
        for (const PointIndex i : M.members)
            expect(M.comp_tag[apply_sigma(F, pts, i)] != 0, "sigma image left M");
    });

    check("every line meets M in exactly (q-1)/2 points", [&] {
        const OvoidReport rep = verify_m_ovoid(F, pts, M.members, half, lines, opt.workers);
        expect(rep.pass, "verification failed");
    });
    check("per-line case breakdowns match the counting argument", [&] {
        const CaseAnalysis cases(F, pts, dec, params);
        for (std::size_t li = 0; li < lines.size(); ++li) {
            const auto line = lines.line(li);
            const auto actual = intersect_breakdown(line, M);
            expect(actual == cases.expected_tuple(line),
                   "breakdown mismatch at line " + std::to_string(li));
        }
    });

    std::printf("%s\n", all_pass ? "all checks passed" : "SOME CHECKS FAILED");
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "construction and exhaustive verification of (q-1)/2-ovoids of the\n"
        "generalized quadrangle Q(4,q), for prime powers q = 1 (mod 4), q > 5"};
    app.require_subcommand(1);
    argv = app.ensure_utf8(argv);

    Options opt;
    const auto add_common = [&](CLI::App* sub, bool with_out = true) {
        sub->add_option("--p", opt.p, "prime characteristic")->required();
        sub->add_option("--k", opt.k, "tower degree, q = p^k")->default_val(1u)
            ->check(CLI::Range(1u, 16u));
        sub->add_option("--workers", opt.workers, "worker thread count")
            ->check(CLI::Range(1u, 256u));
        if (with_out) sub->add_option("--out", opt.out, "output file, or - for stdout");
    };

    CLI::App* construct = app.add_subcommand(
        "construct", "build the (q-1)/2-ovoid and emit its point set");
    add_common(construct);
    construct->add_option("--t", opt.t, "explicit witness t for the pair (a, b)");
    construct->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* verify = app.add_subcommand(
        "verify", "verify the m-ovoid property; exit 0 iff it holds");
    add_common(verify);
    verify->add_option("--t", opt.t, "explicit witness t for the pair (a, b)");
    verify->add_option("--in", opt.in, "verify an external point-set JSON file");
    verify->add_option("--m", opt.m, "target intersection number (default (q-1)/2)");

    CLI::App* orbits = app.add_subcommand("orbits", "list the group orbits on Q(4,q)");
    add_common(orbits);

    CLI::App* counts = app.add_subcommand("counts", "square-shift counts n1..n4");
    add_common(counts);

    CLI::App* breakdown = app.add_subcommand(
        "breakdown", "per-line component intersection counts (CSV)");
    add_common(breakdown);
    breakdown->add_option("--t", opt.t, "explicit witness t for the pair (a, b)");
    breakdown->add_option("--case", opt.case_filter, "only lines with this case tag")
        ->check(CLI::Range(1, 4));

    CLI::App* selftest = app.add_subcommand(
        "selftest", "run the invariant suite for the configured q");
    add_common(selftest, false);
    selftest->add_option("--t", opt.t, "explicit witness t for the pair (a, b)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (construct->parsed()) return run_construct(opt);
        if (verify->parsed()) return run_verify(opt);
        if (orbits->parsed()) return run_orbits(opt);
        if (counts->parsed()) return run_counts(opt);
        if (breakdown->parsed()) return run_breakdown(opt);
        if (selftest->parsed()) return run_selftest(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
