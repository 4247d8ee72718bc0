#include "iqk/sweep.hpp"

#include <omp.h>

#include <fstream>
#include <set>
#include <sstream>

namespace iqk {

std::vector<Int> fundamental_discs_in(const Int& dmin, const Int& dmax) {
    if (!(dmin <= dmax && dmax <= 0))
        throw std::invalid_argument("fundamental_discs_in: need dmin <= dmax <= 0");
    std::vector<Int> out;
    for (Int d = dmax - 1; d >= dmin; --d)
        if (is_fundamental_discriminant(d)) out.push_back(d);
    return out;
}

namespace {

std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    q += '"';
    return q;
}

std::string factor_list(const std::vector<Int>& f) {
    std::string s = "[";
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) s += " ";
        s += f[i].get_str();
    }
    return s + "]";
}

}  // namespace

std::string sweep_csv_header() {
    return "disc,prime,case,h,class_group,r,delta_k,d_k,relation_rank,gab_tors_predicted,"
           "gab_tors_observed,hypothesis_t,hypothesis_confident,lambda_structure,xk_generators,"
           "xk_inertia_families,verification";
}

std::string sweep_csv_row(const ClassificationReport& r) {
    std::ostringstream os;
    os << r.disc.get_str() << "," << r.prime.get_str() << "," << to_string(r.tag) << "," << r.h.get_str()
       << "," << csv_quote(factor_list(r.class_group)) << "," << r.r << "," << r.delta_k << "," << r.d_k
       << "," << r.relation_rank << "," << csv_quote(factor_list(r.gab_tors_predicted)) << ","
       << (r.observed_stabilized ? csv_quote(factor_list(r.gab_tors_observed)) : std::string("unstable"))
       << "," << r.hypothesis_t << "," << (r.hypothesis_confident ? "true" : "false") << ","
       << csv_quote(r.lambda_structure.kind) << ",";
    std::string gens;
    for (const GenSym& g : r.presentation.generators) {
        if (!gens.empty()) gens += ";";
        gens += g.name;
    }
    os << csv_quote(gens) << ",";
    std::string fams;
    for (const InertiaFamily& f : r.presentation.families) {
        if (!fams.empty()) fams += ";";
        fams += f.whole_subgroup ? "H" : ("[" + f.base + ",s...]");
    }
    os << csv_quote(fams) << ",";
    std::string ver = "ok";
    for (const CheckResult& c : r.verification)
        if (!c.pass && !c.skipped) ver = (ver == "ok") ? "fail:" + c.name : ver + "|" + c.name;
    os << csv_quote(ver);
    return os.str();
}

std::vector<std::string> run_sweep_serial(const std::vector<Int>& discs, const Int& p, const Options& opts) {
    std::vector<std::string> rows;
    rows.reserve(discs.size());
    for (const Int& d : discs) rows.push_back(sweep_csv_row(invariants_report(d, p, opts)));
    return rows;
}

std::vector<std::string> run_sweep_parallel(const std::vector<Int>& discs, const Int& p, const Options& opts,
                                            int jobs) {
    if (jobs <= 1) return run_sweep_serial(discs, p, opts);
    std::vector<std::string> rows(discs.size());
    std::vector<std::string> errors(discs.size());
    const long n = static_cast<long>(discs.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (long i = 0; i < n; ++i) {
        try {
            rows[static_cast<size_t>(i)] = sweep_csv_row(invariants_report(discs[static_cast<size_t>(i)], p, opts));
        } catch (const std::exception& e) {
            errors[static_cast<size_t>(i)] = e.what();
        }
    }
    for (long i = 0; i < n; ++i)
        if (!errors[static_cast<size_t>(i)].empty())
            throw std::runtime_error("sweep failed at disc " + discs[static_cast<size_t>(i)].get_str() + ": " +
                                     errors[static_cast<size_t>(i)]);
    return rows;
}

void sweep_to_file(const std::string& path, const Int& dmin, const Int& dmax, const Int& p,
                   const Options& opts, int jobs) {
    std::vector<Int> discs = fundamental_discs_in(dmin, dmax);

    std::set<std::string> present;
    bool have_file = false;
    {
        std::ifstream in(path);
        if (in.good()) {
            std::string line;
            bool first = true;
            while (std::getline(in, line)) {
                if (first) {
                    first = false;
                    have_file = !line.empty();
                    continue;
                }
                auto c1 = line.find(',');
                if (c1 == std::string::npos) continue;
                auto c2 = line.find(',', c1 + 1);
                present.insert(line.substr(0, c2));
            }
        }
    }
    std::vector<Int> missing;
    for (const Int& d : discs)
        if (!present.count(d.get_str() + "," + p.get_str())) missing.push_back(d);

    std::vector<std::string> rows =
        (jobs <= 1) ? run_sweep_serial(missing, p, opts) : run_sweep_parallel(missing, p, opts, jobs);

    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("sweep_to_file: cannot open " + path);
    if (!have_file) out << sweep_csv_header() << "\n";
    for (const std::string& row : rows) {
        out << row << "\n";
        if (!out) throw std::runtime_error("sweep_to_file: write failure on " + path);
    }
    out.flush();
    if (!out) throw std::runtime_error("sweep_to_file: flush failure on " + path);
}

}  // namespace iqk
