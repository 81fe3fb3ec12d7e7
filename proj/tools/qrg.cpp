// qrg: command-line front end for the claim runner and the constructions.

#include <CLI11.hpp>

#include <iostream>

#include "qrg/qrg.hpp"

using namespace qrg;

namespace {

std::string row_string(const std::vector<long long>& row) {
    std::string s;
    for (auto v : row) s += (s.empty() ? "" : " ") + std::to_string(v);
    return s;
}

int cmd_verify(const std::string& registry, const std::string& cache, const std::string& filter,
               const std::string& format, unsigned workers) {
    auto claims = load_registry(registry);
    run_options opt;
    opt.cache_dir = default_cache_dir(cache);
    opt.filter = filter;
    opt.workers = workers;
    auto results = run_claims(claims, opt);
    if (format == "machine") std::cout << machine_report(results);
    else std::cout << human_report(claims, results);
    return any_required_failure(results) ? 1 : 0;
}

int cmd_coxeter(const std::string& name) {
    auto t = parse_coxeter_type(name);
    std::cout << "type " << t.name() << "\n";
    std::cout << "closed-form order " << coxeter_group_order(t) << "\n";
    auto pres = coxeter_presentation_of(t);
    std::cout << "coxeter matrix\n";
    for (const auto& r : pres.m) std::cout << "  " << row_string(r) << "\n";
    try {
        auto c = cartan_matrix_of(t);
        std::cout << "cartan matrix\n";
        for (const auto& r : c) std::cout << "  " << row_string(r) << "\n";
        std::cout << "weight lattice det(C) C^-1\n";
        for (const auto& r : weight_lattice_matrix(t)) std::cout << "  " << row_string(r) << "\n";
    } catch (const not_crystallographic& e) {
        std::cout << "not crystallographic: " << e.what() << "\n";
        return 0;
    }
    try {
        auto rs = generate_root_system(t);
        auto w = weyl_permutation_group(rs);
        std::cout << "roots " << rs.roots.size() << "\n";
        std::cout << "weyl order " << w.order() << " (permutation route)\n";
        std::cout << "derived order " << perm_derived_subgroup(w).order() << "\n";
    } catch (const unsupported_type& e) {
        std::cout << "no root realization: " << e.what() << "\n";
    }
    return 0;
}

int cmd_impref(int m, int p, int n) {
    imprimitive_spec s{m, p, n};
    std::cout << s.name() << " order " << imprimitive_order(s) << " (formula)\n";
    auto g = imprimitive_permutation_group(s);
    std::cout << s.name() << " order " << g.order() << " (permutation route on " << s.m * s.n << " points)\n";
    if (imprimitive_order(s) <= 100000) {
        auto t = enumerate_imprimitive(s);
        std::cout << s.name() << " order " << t.order() << " (matrix table)\n";
    }
    return 0;
}

int cmd_geometry(const std::string& which, const std::string& format, bool edges) {
    if (which != "gq2") throw error("only the gq2 geometry is available");
    auto g = two_qubit_geometry();
    auto hs = enumerate_hyperplanes(g);
    auto ax = check_gq_axioms(g, 2, 2);
    std::map<std::string, std::size_t> census;
    for (const auto& h : hs) ++census[to_string(h.kind)];
    std::optional<mermin_signs> mermin;
    for (const auto& h : hs)
        if (h.kind == hyperplane_kind::grid && mermin_square_signs(g, h).entangled) mermin = mermin_square_signs(g, h);

    if (format == "machine") {
        json j;
        j["points"] = json::array();
        for (const auto& p : g.points) j["points"].push_back(pauli_letters(p));
        j["lines"] = g.lines;
        j["axioms"] = {{"line_size", ax.line_size}, {"point_degree", ax.point_degree},
                       {"near_linear", ax.near_linear}, {"antiflag", ax.antiflag}};
        j["census"] = census;
        if (mermin) j["mermin"] = {{"signs", {mermin->signs[0], mermin->signs[1]}}, {"product", mermin->product}};
        if (edges) j["edges"] = collinearity_edges(g);
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "points (" << g.points.size() << ")\n";
    for (std::size_t i = 0; i < g.points.size(); ++i) std::cout << "  " << std::setw(2) << i << "  " << pauli_letters(g.points[i]) << "\n";
    std::cout << "lines (" << g.lines.size() << ")\n";
    for (const auto& l : g.lines)
        std::cout << "  " << pauli_letters(g.points[l[0]]) << " " << pauli_letters(g.points[l[1]]) << " "
                  << pauli_letters(g.points[l[2]]) << "\n";
    std::cout << "GQ(2,2) axioms: line size " << ax.line_size << ", point degree " << ax.point_degree
              << ", near-linear " << ax.near_linear << ", antiflag " << ax.antiflag << "\n";
    std::cout << "hyperplanes:";
    for (auto [k, v] : census) std::cout << " " << k << "=" << v;
    std::cout << "\n";
    if (mermin) {
        auto show = [](const std::array<int, 3>& s) {
            std::string r;
            for (int v : s) r += v > 0 ? '+' : '-';
            return r;
        };
        std::cout << "mermin square: " << show(mermin->signs[0]) << " / " << show(mermin->signs[1]) << ", product "
                  << mermin->product << "\n";
    }
    if (edges) {
        std::cout << "collinearity edges\n";
        for (auto [a, b] : collinearity_edges(g)) std::cout << a << " " << b << "\n";
    }
    return 0;
}

int cmd_group(const std::string& name) {
    auto h = named_group(name);
    std::cout << h.name << " route " << to_string(h.route) << "\n";
    if (h.table) {
        const auto& t = h.table->table;
        std::cout << "order " << t.order() << "\n";
        std::cout << "center order " << center_of(t).order() << "\n";
        std::cout << "derived order " << derived_subgroup_of(t).order() << "\n";
    } else {
        std::cout << "central quotient order " << h.signed_image->order() << " (signed Pauli action)\n";
        std::cout << "unsigned image order " << h.unsigned_image->order() << "\n";
        std::cout << "derived order of the signed image " << perm_derived_subgroup(*h.signed_image).order() << "\n";
        std::cout << h.kernel << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computational group theory for qubit groups and reflection groups"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the claim registry");
    std::string registry = QRG_DEFAULT_REGISTRY, cache, filter, format = "human";
    unsigned workers = 1;
    verify->add_option("--registry", registry, "claim registry (JSON)");
    verify->add_option("--cache", cache, "cache directory (default: $QRG_CACHE_DIR)");
    verify->add_option("--filter", filter, "only claims whose id starts with this prefix");
    verify->add_option("--format", format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
    verify->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

    auto* cox = app.add_subcommand("coxeter", "root system, Cartan data and Weyl group of a type");
    std::string type;
    cox->add_option("type", type, "e.g. A2, B3, D5, E6, I2(4)")->required();

    auto* imp = app.add_subcommand("impref", "order of the imprimitive group G(m,p,n)");
    int m = 1, p = 1, n = 1;
    imp->add_option("m", m)->required();
    imp->add_option("p", p)->required();
    imp->add_option("n", n)->required();

    auto* geo = app.add_subcommand("geometry", "commutation geometry of two-qubit Paulis");
    std::string which, geo_format = "human";
    bool edges = false;
    geo->add_option("name", which, "gq2")->required();
    geo->add_option("--format", geo_format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
    geo->add_flag("--edges", edges, "also print the collinearity graph as an edge list");

    auto* grp = app.add_subcommand("group", "order, center and derived subgroup of a named group");
    std::string gname;
    grp->add_option("name", gname, "C1 C2 C3 B2 B3 P1 P2 P3 magic")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*verify) return cmd_verify(registry, cache, filter, format, workers);
        if (*cox) return cmd_coxeter(type);
        if (*imp) return cmd_impref(m, p, n);
        if (*geo) return cmd_geometry(which, geo_format, edges);
        if (*grp) return cmd_group(gname);
    } catch (const registry_parse_error& e) {
        std::cerr << "registry error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
