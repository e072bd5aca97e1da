#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gysin/charclasses.hpp"
#include "gysin/gysin.hpp"
#include "gysin/oracle.hpp"
#include "gysin/poly_io.hpp"
#include "gysin/verify.hpp"

namespace gysin::app {

enum ExitCode { kOk = 0, kUsage = 2, kInconsistent = 3 };

using Json = nlohmann::ordered_json;

struct Options {
    std::optional<int> rank;
    std::string flag;
    std::string weight;
    std::string poly;
    std::optional<int> power;
    std::optional<int> k;
    std::optional<int> n;
    std::string basis = "segre";
    std::string format = "text";
    bool check = false;
    std::optional<int> workers;
    int max_rank = 3;
    int max_k = 2;
    bool inject_fault = false;
};

// ---- rendering -------------------------------------------------------------

inline std::string schur_text(const SchurExpansion& x) {
    if (x.terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < x.terms.size(); ++i) {
        const auto& [sigma, c] = x.terms[i];
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        out += i == 0 ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (x.degree == 0) {
            out += to_string(mag);
            continue;
        }
        if (mag != 1) out += to_string(mag) + "*";
        out += "S(" + sigma.padded(std::max(x.rank, sigma.length())).to_string() + ")";
    }
    return out;
}

inline std::string schur_latex(const SchurExpansion& x) {
    if (x.terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < x.terms.size(); ++i) {
        const auto& [sigma, c] = x.terms[i];
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        out += i == 0 ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (x.degree == 0) {
            out += detail::coeff_latex(mag);
            continue;
        }
        if (mag != 1) out += detail::coeff_latex(mag) + " ";
        out += "S_{(" + sigma.padded(std::max(x.rank, sigma.length())).to_string() + ")}";
    }
    return out;
}

inline Json schur_json(const SchurExpansion& x) {
    Json terms = Json::array();
    for (const auto& [sigma, c] : x.terms)
        terms.push_back({{"partition", sigma.padded(std::max(x.rank, sigma.length())).parts()}, {"coeff", to_string(c)}});
    return {{"terms", terms}, {"positive", x.positive}, {"schema", 1}, {"rank", x.rank}, {"degree", x.degree}};
}

inline Json poly_json(const CharPoly& p, int rank) {
    Json terms = Json::array();
    for (const auto& [e, c] : graded_terms(p.poly())) terms.push_back({{"exponents", e}, {"coeff", to_string(c)}});
    return {{"schema", 1},
            {"basis", to_string(p.basis())},
            {"rank", rank},
            {"degree", p.degree()},
            {"polynomial", to_text(p.poly())},
            {"terms", terms}};
}

/// One rendering of a result in the requested basis and format.
inline std::string render(const PushforwardResult& res, const std::string& basis, const std::string& format) {
    if (basis == "schur") {
        if (format == "json") {
            Json j = schur_json(res.schur);
            j["provenance"] = to_string(res.provenance);
            return j.dump();
        }
        return format == "latex" ? schur_latex(res.schur) : schur_text(res.schur);
    }
    const CharPoly& p = basis == "chern" ? res.chern_form : res.segre_form;
    if (format == "json") {
        Json j = poly_json(p, res.rank);
        j["provenance"] = to_string(res.provenance);
        return j.dump();
    }
    return format == "latex" ? to_latex(p.poly()) : to_text(p.poly());
}

// ---- commands --------------------------------------------------------------

inline FlagType resolve_flag(const Options& o) {
    if (o.flag.empty()) {
        if (!o.rank) throw ContractViolation("need --rank or --flag");
        return FlagType::complete(*o.rank);
    }
    FlagType flag(parse_int_list(o.flag));
    if (o.rank && *o.rank != flag.rank())
        throw ContractViolation("--rank " + std::to_string(*o.rank) + " does not match flag (" + flag.to_string() + ")");
    return flag;
}

inline int cmd_pushforward(const Options& o, std::ostream& out, std::ostream& err) {
    const FlagType flag = resolve_flag(o);
    const int d = flag.relative_dimension();
    if (o.weight.empty() == o.poly.empty()) throw ContractViolation("give exactly one of --weight and --poly");
    if (o.power && o.k) throw ContractViolation("give at most one of --power and --k");

    SparsePoly ftilde(VarSet::roots(flag.rank()));
    if (!o.weight.empty()) {
        const WeightVector w = validate_weight(flag, parse_int_list(o.weight));
        if (!w.block_constant)
            throw ContractViolation("weight (" + o.weight + ") is not constant on the blocks of flag (" +
                                    flag.to_string() + ")");
        if (!o.power && !o.k) throw ContractViolation("--weight needs --power or --k");
        const int power = o.power ? *o.power : d + *o.k;
        if (power < 0) throw ContractViolation("power d + k = " + std::to_string(power) + " is negative");
        ftilde = build_ftilde_weight(flag, w, power);
    } else {
        const SparsePoly F = parse_poly(o.poly, VarSet::formal(flag.blocks()));
        const auto deg = F.homogeneous_degree();
        if (!F.is_zero() && !deg) throw ContractViolation("--poly is not homogeneous");
        if (deg && o.power && *o.power != *deg)
            throw ContractViolation("--poly has degree " + std::to_string(*deg) + ", not --power " + std::to_string(*o.power));
        if (deg && o.k && *o.k != *deg - d)
            throw ContractViolation("--poly has degree " + std::to_string(*deg) + ", not d + k = " + std::to_string(d + *o.k));
        ftilde = build_ftilde_general(flag, F);
    }
    if (o.n && *o.n < 1) throw ContractViolation("--n must be positive");

    auto res = dp_pushforward(flag, ftilde, o.n);
    if (o.inject_fault) {
        res.segre_form = CharPoly(Basis::Segre, res.segre_form.degree(), -res.segre_form.poly());
        res.chern_form = CharPoly(Basis::Chern, res.chern_form.degree(), -res.chern_form.poly());
    }
    if (o.check) {
        const auto oracle = oracle_pushforward(flag, ftilde);
        const auto oracle_chern = segre_chern_convert(oracle, Basis::Chern, flag.rank(), oracle.nvars());
        if (!(oracle_chern.poly() == res.chern_form.poly())) {
            err << "check failed: dp " << to_text(res.chern_form.poly()) << " != oracle " << to_text(oracle_chern.poly())
                << "\n";
            return kInconsistent;
        }
    }
    out << render(res, o.basis, o.format) << "\n";
    return kOk;
}

inline int cmd_expand(const Options& o, std::ostream& out, std::ostream&) {
    if (o.poly.empty()) throw ContractViolation("expand needs --poly");
    if (!o.rank) throw ContractViolation("expand needs --rank");
    const int r = *o.rank;
    if (r < 1) throw ContractViolation("--rank must be positive");
    const SparsePoly p = parse_poly(o.poly, VarKind::Chern);
    const auto& groups = p.vars().groups();
    if (groups.size() != 1 || (groups[0].kind != VarKind::Chern && groups[0].kind != VarKind::Segre) || p.vars().laurent())
        throw ContractViolation("expand takes a polynomial in c1..cr or in s1..sn");
    const auto deg = p.homogeneous_degree();
    if (!p.is_zero() && !deg) throw ContractViolation("--poly is not weighted-homogeneous");
    const int k = deg.value_or(0);
    CharPoly in(groups[0].kind == VarKind::Chern ? Basis::Chern : Basis::Segre, k, p);
    if (in.basis() == Basis::Chern && in.nvars() > r)
        throw ContractViolation("--poly uses c" + std::to_string(in.nvars()) + " but the rank is " + std::to_string(r));
    const int n = std::max({o.n.value_or(k), k, 1});

    PushforwardResult res;
    res.rank = r;
    res.degree = k;
    res.chern_form = segre_chern_convert(in, Basis::Chern, r, n);
    res.segre_form = segre_chern_convert(res.chern_form, Basis::Segre, r, n);
    res.schur = schur_expand(res.chern_form, r, k);
    if (!(segre_chern_convert(res.segre_form, Basis::Chern, r, n) == res.chern_form))
        throw InternalError("expand: Segre form does not convert back");
    if (o.format == "json") {
        out << Json{{"schema", 1},
                    {"chern", poly_json(res.chern_form, r)},
                    {"segre", poly_json(res.segre_form, r)},
                    {"schur", schur_json(res.schur)}}
                   .dump()
            << "\n";
        return kOk;
    }
    out << render(res, o.basis, o.format) << "\n";
    return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.max_rank < 1 || o.max_k < 0) throw ContractViolation("--max-rank must be positive and --max-k nonnegative");
    VerifyOptions vo;
    vo.max_rank = o.max_rank;
    vo.max_k = o.max_k;
    vo.workers = resolve_workers(o.workers);
    vo.inject_sign_flip = o.inject_fault;
    const VerifyReport rep = verify_all(vo);

    if (o.format == "json") {
        Json grids = Json::array();
        for (const auto& g : rep.grids) {
            Json failures = Json::array();
            for (const auto& f : g.failures) failures.push_back({{"cell", f.label}, {"detail", f.detail}});
            grids.push_back({{"name", g.name}, {"cells", g.cells}, {"failures", failures}});
        }
        out << Json{{"schema", 1}, {"ok", rep.ok()}, {"cells", rep.cells()}, {"grids", grids}}.dump() << "\n";
    } else {
        for (const auto& g : rep.grids) {
            out << g.name << ": " << g.cells << " cells, " << g.failures.size() << " failures\n";
            for (const auto& f : g.failures) out << "FAIL " << g.name << " " << f.label << ": " << f.detail << "\n";
        }
        if (rep.ok()) out << "all checks passed (" << rep.cells() << " cells)\n";
    }
    if (!rep.ok()) {
        for (const auto& g : rep.grids)
            if (!g.ok()) {
                err << "first mismatch: " << g.name << " " << g.failures.front().label << "\n";
                break;
            }
        return kInconsistent;
    }
    return kOk;
}

struct TableLine {
    std::string label;
    std::string value;
    std::string golden;
};

inline std::vector<TableLine> table_lines() {
    std::vector<TableLine> lines;
    auto weight = [](const std::vector<int>& rho, const std::vector<int>& a, int power) {
        FlagType flag(rho);
        return dp_pushforward(flag, build_ftilde_weight(flag, validate_weight(flag, a), power));
    };
    auto tuple = [](const std::vector<int>& a) { return "(" + detail::join_ints(a) + ")"; };

    // projectivized bundle of lines, Q = pi^*E / O(-1)
    const std::string pe3 = "P(E) r=3 c1(Q)^5";
    auto p3 = weight({0, 1, 3}, {1, 1, 0}, 5);
    lines.push_back({pe3 + " chern", to_text(p3.chern_form.poly()), "4*c1^3 - 3*c1*c2 - c3"});
    lines.push_back({pe3 + " segre", to_text(p3.segre_form.poly()), "-5*s1*s2 + s3"});
    const std::string pe4 = "P(E) r=4 c1(Q)^6";
    auto p4 = weight({0, 1, 4}, {1, 1, 1, 0}, 6);
    lines.push_back({pe4 + " chern", to_text(p4.chern_form.poly()), "10*c1^3 - 4*c1*c2 - c3"});
    lines.push_back({pe4 + " segre", to_text(p4.segre_form.poly()), "-5*s1^3 - 6*s1*s2 + s3"});

    // Grassmannian bundle of 2-planes, r = 4
    const std::vector<std::pair<std::string, std::string>> g2 = {
        {"2", "2"},
        {"5*c1", "-5*s1"},
        {"9*c1^2 - 4*c2", "5*s1^2 + 4*s2"},
        {"14*c1^3 - 14*c1*c2", "-14*s1*s2"},
        {"20*c1^4 - 32*c1^2*c2 - 2*c1*c3 + 6*c2^2 + 8*c4", "14*s1*s3 + 14*s2^2 - 8*s4"},
    };
    for (int N = 4; N <= 8; ++N) {
        auto res = grassmannian_pushforward(4, 2, N);
        const std::string label = "G2(E) r=4 c1(Q)^" + std::to_string(N);
        lines.push_back({label + " chern", to_text(res.chern_form.poly()), g2[N - 4].first});
        lines.push_back({label + " segre", to_text(res.segre_form.poly()), g2[N - 4].second});
    }

    // complete flags, rank 3: general formulas at two weights
    const std::vector<std::pair<std::vector<int>, std::vector<std::string>>> rank3 = {
        {{3, 2, 0}, {"18", "120*S(1,0,0)", "360*S(2,0,0) + 570*S(1,1,0)", "2700*S(2,1,0) + 2340*S(1,1,1)"}},
        {{2, 1, 0}, {"6", "24*S(1,0,0)", "40*S(2,0,0) + 70*S(1,1,0)", "180*S(2,1,0) + 180*S(1,1,1)"}},
    };
    for (const auto& [a, goldens] : rank3)
        for (int k = 0; k <= 3; ++k) {
            auto res = weight({0, 1, 2, 3}, a, 3 + k);
            lines.push_back({"F(E) r=3 c1(Q^" + tuple(a) + ")^" + std::to_string(3 + k) + " schur", schur_text(res.schur),
                             goldens[k]});
        }
    lines.push_back({"F(E) r=3 c1(Q^(3,2,0))^6 segre", to_text_factored(weight({0, 1, 2, 3}, {3, 2, 0}, 6).segre_form.poly()),
                     "180*(-15*s1*s2 + 2*s3)"});
    lines.push_back({"F(E) r=3 c1(Q^(2,1,0))^6 segre", to_text_factored(weight({0, 1, 2, 3}, {2, 1, 0}, 6).segre_form.poly()),
                     "-180*s1*s2"});

    // complete flags, rank 4
    const std::vector<std::tuple<std::vector<int>, int, std::string>> rank4 = {
        {{3, 2, 1, 0}, 9, "90720*(-s1^3 - 2*s1*s2)"},
        {{3, 2, 1, 0}, 10, "5040*(216*s1^2*s2 + 7*s1*s3 + 39*s2^2 - 4*s4)"},
        {{4, 3, 2, 0}, 9, "181440*(-8*s1^3 - 12*s1*s2 + s3)"},
        {{4, 3, 2, 0}, 10, "40320*(648*s1^2*s2 - 124*s1*s3 + 42*s2^2 + 13*s4)"},
    };
    for (const auto& [a, power, golden] : rank4)
        lines.push_back({"F(E) r=4 c1(Q^" + tuple(a) + ")^" + std::to_string(power) + " segre",
                         to_text_factored(weight({0, 1, 2, 3, 4}, a, power).segre_form.poly()), golden});
    return lines;
}

inline int cmd_tables(const Options& o, std::ostream& out, std::ostream& err) {
    int status = kOk;
    auto lines = table_lines();
    if (o.inject_fault && !lines.empty()) lines.back().value = "-(" + lines.back().value + ")";
    Json rows = Json::array();
    for (const auto& line : lines) {
        const bool ok = line.value == line.golden;
        if (!ok) {
            err << "golden mismatch: " << line.label << ": got " << line.value << ", expected " << line.golden << "\n";
            status = kInconsistent;
        }
        if (o.format == "json")
            rows.push_back({{"label", line.label}, {"value", line.value}, {"ok", ok}});
        else
            out << line.label << ": " << line.value << "\n";
    }
    if (o.format == "json") out << Json{{"schema", 1}, {"ok", status == kOk}, {"lines", rows}}.dump() << "\n";
    return status;
}

// ---- argument parsing -------------------------------------------------------

/// key=value config whose bare keys belong to the subcommand being run.
class SubcommandConfig : public CLI::ConfigBase {
public:
    explicit SubcommandConfig(const CLI::App* root) : root_(root) {
        arrayStart = '\0';
        arrayEnd = '\0';
        arraySeparator = '\0';
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        auto items = CLI::ConfigBase::from_config(input);
        const auto active = root_->get_subcommands();
        if (active.empty()) return items;
        for (auto& item : items)
            if (item.parents.empty()) item.parents.push_back(active.front()->get_name());
        return items;
    }

private:
    const CLI::App* root_;
};

/// Parses argv and runs the chosen command. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App cli{"Gysin push-forwards of characteristic classes along flag bundles"};
    cli.require_subcommand(1);
    cli.fallthrough();
    cli.set_config("--config", "", "key=value file mirroring the long options of the subcommand");
    cli.config_formatter(std::make_shared<SubcommandConfig>(&cli));
    Options o;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}));
    };
    auto add_basis = [&](CLI::App* sub) {
        sub->add_option("--basis", o.basis, "segre, chern or schur")->check(CLI::IsMember({"segre", "chern", "schur"}));
    };

    auto* push = cli.add_subcommand("pushforward", "push forward c1(Q^a)^power or F(c1(Q_1), ..., c1(Q_m))");
    push->add_option("--rank", o.rank, "rank r of E");
    push->add_option("--flag", o.flag, "dimension sequence 0,...,r (default: complete flag)");
    auto* w = push->add_option("--weight", o.weight, "weight a_1,...,a_r, constant on blocks");
    auto* p = push->add_option("--poly", o.poly, "homogeneous polynomial in u1..um");
    w->excludes(p);
    auto* pw = push->add_option("--power", o.power, "exponent d + k");
    auto* kk = push->add_option("--k", o.k, "degree k of the result");
    pw->excludes(kk);
    push->add_option("--n", o.n, "Segre truncation (default k)");
    add_basis(push);
    add_format(push);
    push->add_flag("--check", o.check, "compare with the symmetrizer oracle");
    push->add_flag("--inject-fault", o.inject_fault)->group("");

    auto* ver = cli.add_subcommand("verify", "run the consistency grids");
    ver->add_option("--max-rank", o.max_rank, "largest rank in the grids");
    ver->add_option("--max-k", o.max_k, "largest result degree in the grids");
    ver->add_option("--workers", o.workers, "worker threads (default GYSIN_WORKERS or all cores)");
    add_format(ver);
    ver->add_flag("--inject-fault", o.inject_fault)->group("");

    auto* tab = cli.add_subcommand("tables", "print the worked examples, checked against stored values");
    add_format(tab);
    tab->add_flag("--inject-fault", o.inject_fault)->group("");

    auto* exp = cli.add_subcommand("expand", "rewrite a Chern or Segre polynomial in another basis");
    exp->add_option("--rank", o.rank, "rank r")->required();
    exp->add_option("--poly", o.poly, "polynomial in c1..cr or s1..sn")->required();
    exp->add_option("--n", o.n, "Segre truncation");
    add_basis(exp);
    add_format(exp);

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*push) return cmd_pushforward(o, out, err);
        if (*ver) return cmd_verify(o, out, err);
        if (*tab) return cmd_tables(o, out, err);
        return cmd_expand(o, out, err);
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kInconsistent;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInconsistent;
    }
}

}  // namespace gysin::app
