#include "darboux/cli.hpp"

#include <CLI11.hpp>
#include <sstream>

#include "darboux/continued.hpp"
#include "darboux/criterion.hpp"
#include "darboux/laplace.hpp"

namespace darboux {

namespace {

using nlohmann::ordered_json;

ordered_json quad_json(const DTQuad& q) {
    return ordered_json{{"L", format_operator(q.L)},
                        {"L1", format_operator(q.L1)},
                        {"M", format_operator(q.M)},
                        {"N", format_operator(q.N)}};
}

ordered_json witness_json(const InverseWitness& w) {
    return ordered_json{{"Mp", format_operator(w.Mp)},
                        {"Np", format_operator(w.Np)},
                        {"A", format_operator(w.A)},
                        {"B", format_operator(w.B)}};
}

ordered_json ops_json(const std::vector<LinOp>& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& op : v) arr.push_back(format_operator(op));
    return arr;
}

CommandResult verdict(bool b, ordered_json payload, std::string diag = "") {
    CommandResult r;
    r.status = b ? "true" : "false";
    r.exit_code = b ? 0 : 1;
    r.payload = std::move(payload);
    r.diagnostics = std::move(diag);
    return r;
}

CommandResult value(ordered_json payload, std::string diag = "") {
    CommandResult r;
    r.payload = std::move(payload);
    r.diagnostics = std::move(diag);
    return r;
}

LaplaceDirection parse_direction(const std::string& d) {
    if (d == "x") return LaplaceDirection::X;
    if (d == "y") return LaplaceDirection::Y;
    fail(ErrorKind::UsageError, "direction must be x or y, got: " + d);
}

const char* tag_name(FirstOrderTag t) {
    switch (t) {
        case FirstOrderTag::FactorizationWronskian: return "factorization-wronskian";
        case FirstOrderTag::TypeI: return "type1";
        case FirstOrderTag::WronskianType: return "wronskian";
    }
    return "?";
}

// all option strings for the single subcommand that fires
struct Opts {
    std::string session;
    std::string L, L1, M, N;       // primary quad
    std::string L2, M2, N2;        // second quad (compose / equivalent)
    std::string C, Mp, Np, A, B;   // shift / witnesses / classify
    std::string a, b, c, f;
    std::string dir = "x", first = "x", x = "x", y = "y";
    std::string op, var, psi, to, lhs, rhs, gauge;
    std::vector<std::string> As, Ms, seeds;
    std::string tail_f, tail_c, tail_B;
};

// Built-in regression: P = dx + x dy, Q = dx + 1, R = dxx + x dxy + dx +
// (2+x) dy satisfy R Q = Q Q P, so (Q, Q) : Q P -> R is a transformation
// whose target factors in two inequivalent ways.
CommandResult landau_demo() {
    FieldContext ctx({"x", "y"}, {}, {});
    const LinOp p = parse_operator(ctx, "Dx + x*Dy");
    const LinOp q = parse_operator(ctx, "Dx + 1");
    const LinOp r = parse_operator(ctx, "Dx^2 + x*Dx*Dy + Dx + (2+x)*Dy");
    const LinOp qp = op_mul(ctx, q, p);
    const LinOp defect = op_mul(ctx, r, q) - op_mul(ctx, q, op_mul(ctx, q, p));
    DTQuad quad{qp, r, q, q};
    const bool ok = defect.is_zero() && dt_verify(ctx, quad);
    return verdict(ok, ordered_json{{"P", format_operator(p)},
                                    {"Q", format_operator(q)},
                                    {"R", format_operator(r)},
                                    {"QP", format_operator(qp)},
                                    {"defect", format_operator(defect)},
                                    {"quad", quad_json(quad)}});
}

std::variant<ScalarTail, CommutingTail> tail_from(const Session& s, const Opts& o) {
    const bool has_f = !o.tail_f.empty();
    const bool has_cb = !o.tail_c.empty() || !o.tail_B.empty();
    if (has_f == has_cb)
        fail(ErrorKind::UsageError, "give either --f or both --c and --B as the tail");
    if (has_f) return ScalarTail{s.parse_scalar(o.tail_f)};
    if (o.tail_c.empty() || o.tail_B.empty())
        fail(ErrorKind::UsageError, "a commuting tail needs both --c and --B");
    return CommutingTail{s.parse_scalar(o.tail_c), s.parse(o.tail_B)};
}

Chain chain_from(const Session& s, const Opts& o) {
    std::vector<LinOp> a, m;
    for (const auto& src : o.As) a.push_back(s.parse(src));
    for (const auto& src : o.Ms) m.push_back(s.parse(src));
    return make_chain(s.ctx, std::move(a), std::move(m), tail_from(s, o));
}

CommandResult dispatch(const std::vector<std::string>& args) {
    CLI::App app{"exact calculus for Darboux transformations of linear partial "
                 "differential operators"};
    app.require_subcommand(1);
    Opts o;
    CommandResult out;
    Session ses; // loaded lazily by need()

    auto need = [&]() -> Session& {
        if (o.session.empty()) fail(ErrorKind::UsageError, "--session FILE is required");
        ses = load_session(o.session);
        return ses;
    };

    auto with_session = [&](CLI::App* sub) {
        sub->add_option("--session", o.session, "session JSON file");
        return sub;
    };
    auto quad_opts = [&](CLI::App* sub) {
        sub->add_option("--L", o.L)->required();
        sub->add_option("--L1", o.L1)->required();
        sub->add_option("--M", o.M)->required();
        sub->add_option("--N", o.N)->required();
        return sub;
    };
    auto parse_quad = [&](const Session& s) {
        return DTQuad{s.parse(o.L), s.parse(o.L1), s.parse(o.M), s.parse(o.N)};
    };

    {
        auto* sub = quad_opts(with_session(
            app.add_subcommand("verify-dt", "check N L = L1 M and the symbol match")));
        sub->callback([&] {
            Session& s = need();
            const bool ok = dt_verify(s.ctx, parse_quad(s));
            out = verdict(ok, ordered_json{{"valid", ok}});
        });
    }
    {
        auto* sub = quad_opts(with_session(
            app.add_subcommand("compose", "compose with a second transformation out of L1")));
        sub->add_option("--L2", o.L2)->required();
        sub->add_option("--M2", o.M2)->required();
        sub->add_option("--N2", o.N2)->required();
        sub->callback([&] {
            Session& s = need();
            DTQuad q1 = parse_quad(s);
            DTQuad q2{q1.L1, s.parse(o.L2), s.parse(o.M2), s.parse(o.N2)};
            out = value(ordered_json{{"quad", quad_json(dt_compose(s.ctx, q1, q2))}});
        });
    }
    {
        auto* sub = quad_opts(with_session(app.add_subcommand(
            "equivalent", "find A with M2 = M + A L and N2 = N + L1 A, if any")));
        sub->add_option("--M2", o.M2)->required();
        sub->add_option("--N2", o.N2)->required();
        sub->callback([&] {
            Session& s = need();
            DTQuad q1 = parse_quad(s);
            DTQuad q2{q1.L, q1.L1, s.parse(o.M2), s.parse(o.N2)};
            if (auto a = dt_equivalent(s.ctx, q1, q2))
                out = verdict(true,
                              ordered_json{{"equivalent", true}, {"A", format_operator(*a)}});
            else
                out = verdict(false, ordered_json{{"equivalent", false}});
        });
    }
    {
        auto* sub = quad_opts(with_session(
            app.add_subcommand("shift", "shift the endpoints: (L + C M, L1 + N C, M, N)")));
        sub->add_option("--C", o.C)->required();
        sub->callback([&] {
            Session& s = need();
            out = value(
                ordered_json{{"quad", quad_json(dt_shift(s.ctx, parse_quad(s), s.parse(o.C)))}});
        });
    }
    {
        auto* sub = quad_opts(
            with_session(app.add_subcommand("dual", "swap objects and morphisms: (M, N, L, L1)")));
        sub->callback([&] {
            Session& s = need();
            DTQuad q = parse_quad(s);
            if (!dt_verify(s.ctx, q))
                out = verdict(false, ordered_json{{"valid", false}},
                              "the quad itself does not verify");
            else
                out = value(ordered_json{{"quad", quad_json(dt_dual(q))}});
        });
    }
    {
        auto* sub = quad_opts(with_session(
            app.add_subcommand("invert-check", "verify an inverse witness (Mp, Np, A, B)")));
        sub->add_option("--Mp", o.Mp)->required();
        sub->add_option("--Np", o.Np)->required();
        sub->add_option("--A", o.A)->required();
        sub->add_option("--B", o.B)->required();
        sub->callback([&] {
            Session& s = need();
            InverseWitness w{s.parse(o.Mp), s.parse(o.Np), s.parse(o.A), s.parse(o.B)};
            const bool ok = dt_verify_inverse(s.ctx, parse_quad(s), w);
            out = verdict(ok, ordered_json{{"valid", ok}});
        });
    }
    {
        auto* sub = with_session(app.add_subcommand(
            "laplace", "Laplace transformation of dx dy + a dx + b dy + c, with inverse"));
        sub->add_option("--a", o.a)->required();
        sub->add_option("--b", o.b)->required();
        sub->add_option("--c", o.c)->required();
        sub->add_option("--dir", o.dir, "x or y");
        sub->add_option("--x", o.x);
        sub->add_option("--y", o.y);
        sub->callback([&] {
            Session& s = need();
            Schrodinger2D sch{o.x, o.y, s.parse_scalar(o.a), s.parse_scalar(o.b),
                              s.parse_scalar(o.c)};
            const LaplaceDirection dir = parse_direction(o.dir);
            const LaplaceInvariants inv = laplace_invariants(s.ctx, sch);
            const DTQuad q = laplace_transform(s.ctx, sch, dir);
            const InverseWitness w = laplace_inverse(s.ctx, q, dir, o.x, o.y);
            out = value(ordered_json{{"h", format_field_element(inv.h)},
                                     {"k", format_field_element(inv.k)},
                                     {"quad", quad_json(q)},
                                     {"witness", witness_json(w)}});
        });
    }
    {
        auto* sub = with_session(app.add_subcommand(
            "laplace-inverse", "inverse witness of the Laplace transformation for a, b, c"));
        sub->add_option("--a", o.a)->required();
        sub->add_option("--b", o.b)->required();
        sub->add_option("--c", o.c)->required();
        sub->add_option("--dir", o.dir, "x or y");
        sub->add_option("--x", o.x);
        sub->add_option("--y", o.y);
        sub->callback([&] {
            Session& s = need();
            Schrodinger2D sch{o.x, o.y, s.parse_scalar(o.a), s.parse_scalar(o.b),
                              s.parse_scalar(o.c)};
            const LaplaceDirection dir = parse_direction(o.dir);
            const DTQuad q = laplace_transform(s.ctx, sch, dir);
            out = value(
                ordered_json{{"witness", witness_json(laplace_inverse(s.ctx, q, dir, o.x, o.y))}});
        });
    }
    {
        auto* sub = with_session(app.add_subcommand(
            "laplace-compose", "compose a Laplace transformation with its mirror"));
        sub->add_option("--a", o.a)->required();
        sub->add_option("--b", o.b)->required();
        sub->add_option("--c", o.c)->required();
        sub->add_option("--first", o.first, "direction applied first: x or y");
        sub->add_option("--x", o.x);
        sub->add_option("--y", o.y);
        sub->callback([&] {
            Session& s = need();
            Schrodinger2D sch{o.x, o.y, s.parse_scalar(o.a), s.parse_scalar(o.b),
                              s.parse_scalar(o.c)};
            const LaplaceComposition comp =
                laplace_compose_check(s.ctx, sch, parse_direction(o.first));
            out = value(ordered_json{{"quad", quad_json(comp.composite)},
                                     {"gauge", format_field_element(comp.gauge)}});
        });
    }
    {
        auto* sub = with_session(
            app.add_subcommand("type1", "one-step transformation from L = C M + f"));
        sub->add_option("--C", o.C)->required();
        sub->add_option("--M", o.M)->required();
        sub->add_option("--f", o.f)->required();
        sub->callback([&] {
            Session& s = need();
            out = value(ordered_json{
                {"quad", quad_json(type1_build(s.ctx, s.parse(o.C), s.parse(o.M),
                                               s.parse_scalar(o.f)))}});
        });
    }
    {
        auto* sub = with_session(app.add_subcommand(
            "continued", "transformation generated by a chain M_{i-1} = A_i M_i + M_{i+1}"));
        sub->add_option("--A", o.As, "A_1 .. A_k in order")->required();
        sub->add_option("--M", o.Ms, "M_1 .. M_k in order")->required();
        sub->add_option("--f", o.tail_f, "scalar tail M_{k+1}");
        sub->add_option("--c", o.tail_c, "commuting tail scalar");
        sub->add_option("--B", o.tail_B, "commuting tail operator");
        sub->callback([&] {
            Session& s = need();
            const ContinuedBuild b = continued_build(s.ctx, chain_from(s, o));
            out = value(ordered_json{{"quad", quad_json(b.quad)},
                                     {"M", ops_json(b.M_seq)},
                                     {"N", ops_json(b.N_seq)}});
        });
    }
    {
        auto* sub = with_session(app.add_subcommand(
            "continued-inverse", "closed-form inverse witness of a scalar-tail chain"));
        sub->add_option("--A", o.As, "A_1 .. A_k in order")->required();
        sub->add_option("--M", o.Ms, "M_1 .. M_k in order")->required();
        sub->add_option("--f", o.tail_f, "scalar tail M_{k+1}")->required();
        sub->callback([&] {
            Session& s = need();
            const Chain ch = chain_from(s, o);
            const ContinuedInverse inv = continued_inverse(s.ctx, ch);
            out = value(ordered_json{{"witness", witness_json(inv.w)},
                                     {"P", ops_json(inv.P)},
                                     {"Pp", ops_json(inv.Pp)},
                                     {"R", ops_json(inv.R)},
                                     {"Rp", ops_json(inv.Rp)}});
        });
    }
    {
        auto* sub = with_session(app.add_subcommand(
            "decompose-xxy", "closed-form chain for a001 dxxy + a00 dxx + a01 dxy + ..."));
        sub->add_option("--op", o.op)->required();
        sub->add_option("--x", o.x);
        sub->add_option("--y", o.y);
        sub->callback([&] {
            Session& s = need();
            const Chain ch = decompose_xxy(s.ctx, s.parse(o.op), o.x, o.y);
            const ContinuedBuild b = continued_build(s.ctx, ch);
            out = value(ordered_json{{"A", ops_json(ch.A)},
                                     {"M", ops_json(ch.M)},
                                     {"f", format_operator(ch.tail_op())},
                                     {"quad", quad_json(b.quad)}});
        });
    }
    {
        auto* sub = with_session(app.add_subcommand(
            "criterion", "does L admit a transformation with M = Dt and first-order N?"));
        sub->add_option("--op", o.op)->required();
        sub->add_option("--var", o.var)->required();
        sub->callback([&] {
            Session& s = need();
            const CriterionResult r = tfree_criterion(s.ctx, s.parse(o.op), o.var);
            ordered_json payload{{"admits", r.admits}};
            if (r.decomposition) {
                payload["A"] = format_operator(r.decomposition->A);
                payload["c"] = format_field_element(r.decomposition->c);
                payload["B"] = format_operator(r.decomposition->B);
            }
            if (r.quad) payload["quad"] = quad_json(*r.quad);
            out = verdict(r.admits, std::move(payload), r.diagnostic);
        });
    }
    {
        auto* sub = with_session(app.add_subcommand(
            "wronskian-criterion", "criterion for M = Dt - psi_t/psi with L[psi] = 0"));
        sub->add_option("--op", o.op)->required();
        sub->add_option("--psi", o.psi)->required();
        sub->add_option("--var", o.var)->required();
        sub->callback([&] {
            Session& s = need();
            const CriterionResult r =
                wronskian_criterion(s.ctx, s.parse(o.op), s.parse_scalar(o.psi), o.var);
            ordered_json payload{{"admits", r.admits}};
            if (r.decomposition) {
                payload["A"] = format_operator(r.decomposition->A);
                payload["c"] = format_field_element(r.decomposition->c);
                payload["B"] = format_operator(r.decomposition->B);
            }
            if (r.quad) payload["quad"] = quad_json(*r.quad);
            out = verdict(r.admits, std::move(payload), r.diagnostic);
        });
    }
    {
        auto* sub = with_session(app.add_subcommand(
            "classify", "place L = C M + c B with [M, B] = 0 in the first-order trichotomy"));
        sub->add_option("--C", o.C)->required();
        sub->add_option("--M", o.M)->required();
        sub->add_option("--c", o.c)->required();
        sub->add_option("--B", o.B)->required();
        sub->callback([&] {
            Session& s = need();
            const FirstOrderClass fc = classify_first_order(
                s.ctx, s.parse(o.C), s.parse(o.M), s.parse_scalar(o.c), s.parse(o.B));
            out = value(
                ordered_json{{"tag", tag_name(fc.tag)}, {"quad", quad_json(fc.quad)}});
        });
    }
    {
        auto* sub = with_session(app.add_subcommand(
            "unique", "is N uniquely determined by L and M (nothing right-divides L by M)?"));
        sub->add_option("--L", o.L)->required();
        sub->add_option("--M", o.M)->required();
        sub->callback([&] {
            Session& s = need();
            const bool u = unique_determination(s.ctx, s.parse(o.L), s.parse(o.M));
            out = verdict(u, ordered_json{{"unique", u}});
        });
    }
    {
        auto* sub = with_session(app.add_subcommand(
            "wronskian-op", "monic operator in Dv of order m annihilating the seeds"));
        sub->add_option("--seed", o.seeds, "seed field elements")->required();
        sub->add_option("--var", o.var)->required();
        sub->callback([&] {
            Session& s = need();
            std::vector<FieldElement> seeds;
            for (const auto& src : o.seeds) seeds.push_back(s.parse_scalar(src));
            out = value(ordered_json{
                {"operator", format_operator(wronskian_operator(s.ctx, seeds, o.var))}});
        });
    }
    {
        auto* sub =
            with_session(app.add_subcommand("apply", "apply an operator to a field element"));
        sub->add_option("--op", o.op)->required();
        sub->add_option("--to", o.to)->required();
        sub->callback([&] {
            Session& s = need();
            out = value(ordered_json{{"result", format_field_element(op_apply(
                                                    s.ctx, s.parse(o.op), s.parse_scalar(o.to)))}});
        });
    }
    {
        auto* sub = with_session(app.add_subcommand("mul", "operator product lhs * rhs"));
        sub->add_option("--lhs", o.lhs)->required();
        sub->add_option("--rhs", o.rhs)->required();
        sub->callback([&] {
            Session& s = need();
            out = value(ordered_json{
                {"result", format_operator(op_mul(s.ctx, s.parse(o.lhs), s.parse(o.rhs)))}});
        });
    }
    {
        auto* sub = with_session(
            app.add_subcommand("normalize", "parse an expression and print its canonical form"));
        sub->add_option("--op", o.op)->required();
        sub->callback([&] {
            Session& s = need();
            out = value(ordered_json{{"result", format_operator(s.parse(o.op))}});
        });
    }
    {
        auto* sub = app.add_subcommand(
            "landau-demo", "built-in regression: R Q = Q Q P with two-way factorization");
        sub->callback([&] { out = landau_demo(); });
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        CommandResult help;
        help.diagnostics = app.help();
        return help;
    } catch (const CLI::ParseError& e) {
        fail(ErrorKind::UsageError, e.what());
    }
    return out;
}

void flatten(const ordered_json& j, const std::string& prefix, std::ostringstream& os) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    } else if (j.is_array()) {
        int i = 0;
        for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", os);
    } else if (j.is_string()) {
        os << prefix << " = " << j.get<std::string>() << "\n";
    } else {
        os << prefix << " = " << j.dump() << "\n";
    }
}

} // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    bool json = false;
    for (const auto& a : args) {
        if (a == "--json")
            json = true;
        else
            rest.push_back(a);
    }

    CommandResult r;
    try {
        r = dispatch(rest);
    } catch (const Error& e) {
        r = CommandResult{};
        r.status = "error";
        r.diagnostics = e.what();
        r.exit_code = is_usage_error(e.kind) ? 2 : 3;
    } catch (const std::exception& e) {
        r = CommandResult{};
        r.status = "error";
        r.diagnostics = e.what();
        r.exit_code = 3;
    }
    r.json = json;
    return r;
}

std::string render_human(const CommandResult& r) {
    std::ostringstream os;
    os << "status: " << r.status << "\n";
    flatten(r.payload, "", os);
    if (!r.diagnostics.empty()) os << r.diagnostics << "\n";
    return os.str();
}

std::string render_json(const CommandResult& r) {
    ordered_json doc{{"status", r.status}, {"payload", r.payload}, {"diagnostics", r.diagnostics}};
    return doc.dump(2) + "\n";
}

} // namespace darboux
