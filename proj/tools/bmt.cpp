// Command-line front end: rmld formulas, Groebner certification, model
// matrices, ideal generators, reciprocal MLE fits, fiber-product checks,
// topology sweeps. Exit codes: 0 success, 1 verification mismatch, 2 usage
// or operational error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmt/enumerate.hpp"
#include "bmt/field.hpp"
#include "bmt/lattice.hpp"
#include "bmt/mle.hpp"
#include "bmt/model_matrices.hpp"
#include "bmt/rmld.hpp"
#include "bmt/toric.hpp"
#include "bmt/tree.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

struct GlobalOpts {
  std::uint64_t seed = 42;
  std::uint64_t prime = 0;  // 0: use the default prime pair
  bool rational = false;
  double tol = 1e-10;
  int max_iter = 100;
  std::uint64_t max_pairs = 0;  // 0: default / environment
  std::string format = "text";
  bool no_timing = false;
};

bmt::CertifyOptions certify_options(const GlobalOpts& g) {
  bmt::CertifyOptions opt;
  opt.seed = g.seed;
  opt.rational = g.rational;
  opt.with_timing = !g.no_timing;
  if (g.prime != 0)
    opt.primes = {g.prime, g.prime == bmt::kPrimeA ? bmt::kPrimeB : bmt::kPrimeA};
  if (const char* env = std::getenv("BMT_RMLD_MAX_PAIRS"))
    opt.buch.max_pair_reductions = std::strtoull(env, nullptr, 10);
  if (g.max_pairs != 0) opt.buch.max_pair_reductions = g.max_pairs;
  return opt;
}

// inline Newick (ends in ';') or a file containing one
bmt::RootedTree read_tree(const std::string& arg) {
  std::string text = arg;
  if (text.find(';') == std::string::npos) {
    std::ifstream in(arg);
    if (!in) throw std::runtime_error("cannot open tree file: " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return bmt::parse_newick(text);
}

Eigen::MatrixXd read_covariance_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open covariance file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (char& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    bool numeric = true;
    while (ls >> tok) {
      try {
        size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
      if (!numeric) break;
    }
    if (!numeric && rows.empty()) continue;  // header line
    if (!numeric) throw std::runtime_error("non-numeric covariance entry: " + tok);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty covariance file");
  const size_t n = rows.size();
  Eigen::MatrixXd m(n, n);
  for (size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n)
      throw std::runtime_error("covariance matrix must be square");
    for (size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

void emit(const nlohmann::json& j, const GlobalOpts& g, const std::string& text_form) {
  if (g.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text_form;
}

int cmd_rmld(const std::string& tree_arg, const GlobalOpts& g) {
  const auto t = read_tree(tree_arg);
  const auto value = bmt::rmld_formula(t);
  nlohmann::json j;
  j["tree"] = t.newick();
  j["rmld"] = value.get_str();
  emit(j, g, value.get_str() + "\n");
  return kExitOk;
}

int cmd_certify(const std::string& tree_arg, const GlobalOpts& g) {
  const auto t = read_tree(tree_arg);
  const auto rep = bmt::rmld_certify(t, certify_options(g));
  std::ostringstream text;
  text << "tree       " << rep.newick << "\n"
       << "formula    " << rep.formula.get_str() << "\n"
       << "certified  " << rep.certified_degree << "\n"
       << "match      " << (rep.match ? "true" : "false") << "\n";
  emit(rep.to_json(!g.no_timing), g, text.str());
  return rep.match ? kExitOk : kExitMismatch;
}

int cmd_matrices(const std::string& tree_arg, bool with_starred, const GlobalOpts& g) {
  const auto t = read_tree(tree_arg);
  auto a = bmt::design_matrix(t);
  auto b = bmt::path_matrix(t);
  if (g.format == "json") {
    auto dump = [](const bmt::IntMat& m) {
      nlohmann::json rows = nlohmann::json::array();
      for (int r = 0; r < m.rows; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c).get_si());
        rows.push_back(std::move(row));
      }
      nlohmann::json j;
      j["rows"] = m.row_labels;
      j["cols"] = m.col_labels;
      j["entries"] = std::move(rows);
      return j;
    };
    nlohmann::json j;
    j["tree"] = t.newick();
    j["A"] = dump(a);
    j["B"] = dump(b);
    if (with_starred) j["B_star"] = dump(bmt::starred(b));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "# A\n" << bmt::to_csv(a) << "# B\n" << bmt::to_csv(b);
    if (with_starred) std::cout << "# B_star\n" << bmt::to_csv(bmt::starred(b));
  }
  return kExitOk;
}

int cmd_ideal(const std::string& tree_arg, const GlobalOpts& g) {
  const auto t = read_tree(tree_arg);
  const auto vars = bmt::pair_vars(t.max_leaf());
  const bmt::RationalField f;
  nlohmann::json list = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& b : bmt::tree_binomials(t)) {
    const std::string s = bmt::poly_to_string(bmt::poly_monic(b.poly(f), f), vars, f);
    list.push_back(s);
    text << s << "\n";
  }
  nlohmann::json j;
  j["tree"] = t.newick();
  j["generators"] = std::move(list);
  emit(j, g, text.str());
  return kExitOk;
}

int cmd_fit(const std::string& tree_arg, const std::string& cov_path, const GlobalOpts& g) {
  const auto t = read_tree(tree_arg);
  const auto s = bmt::SampleCovariance::from(read_covariance_csv(cov_path));
  auto fit = bmt::newton_fit(t, s, g.tol, g.max_iter);
  fit.residual = bmt::stationarity_residual(t, fit, s);
  std::ostringstream text;
  text << "objective  " << fit.objective << "\n"
       << "residual   " << fit.residual << "\n"
       << "iterations " << fit.iterations << "\n"
       << "converged  " << (fit.converged ? "true" : "false") << "\n";
  emit(fit.to_json(), g, text.str());
  return kExitOk;
}

int cmd_check_tfp(const std::string& tree_arg, int ell, int m, const GlobalOpts& g) {
  const auto t_prime = read_tree(tree_arg);
  const auto opt = certify_options(g);
  bmt::TfpGluing gluing(t_prime, ell, m);
  const auto rep = bmt::tfp_kernel_check(gluing, 7, opt.buch);

  const auto glued_rep = bmt::rmld_certify(gluing.glued.tree, opt);
  const auto prime_rep = bmt::rmld_certify(t_prime, opt);
  const auto star_rep = bmt::rmld_certify(bmt::star_tree(m), opt);
  const bool multiplicative =
      glued_rep.certified_degree == prime_rep.certified_degree * star_rep.certified_degree;
  const bool all_ok = rep.passed() && multiplicative && glued_rep.match && prime_rep.match &&
                      star_rep.match;

  nlohmann::json j = rep.to_json();
  j["glued_tree"] = gluing.glued.tree.newick();
  j["certified_glued"] = glued_rep.certified_degree;
  j["certified_t_prime"] = prime_rep.certified_degree;
  j["certified_star"] = star_rep.certified_degree;
  j["multiplicative"] = multiplicative;
  j["passed"] = all_ok;
  std::ostringstream text;
  text << "glued tree          " << gluing.glued.tree.newick() << "\n"
       << "kernel ranks        psi=" << rep.kernel_rank_psi << " B=" << rep.kernel_rank_b
       << " equal=" << (rep.kernels_equal ? "true" : "false") << "\n"
       << "ideal equal         "
       << (rep.ideals_equal ? (*rep.ideals_equal ? "true" : "false") : "skipped") << "\n"
       << "degrees             " << glued_rep.certified_degree << " = "
       << prime_rep.certified_degree << " * " << star_rep.certified_degree << " : "
       << (multiplicative ? "true" : "false") << "\n";
  emit(j, g, text.str());
  return all_ok ? kExitOk : kExitMismatch;
}

int cmd_enumerate(int max_leaves, const GlobalOpts& g) {
  const auto opt = certify_options(g);
  const auto trees = bmt::all_topologies_up_to(max_leaves);
  bool all_match = true;
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream text;
  std::ostringstream csv;
  csv << "leaves,tree,formula,certified,match\n";
  for (const auto& t : trees) {
    const auto rep = bmt::rmld_certify(t, opt);
    all_match = all_match && rep.match;
    nlohmann::json row;
    row["leaves"] = t.leaf_count();
    row["tree"] = rep.newick;
    row["formula"] = rep.formula.get_str();
    row["certified"] = rep.certified_degree;
    row["match"] = rep.match;
    rows.push_back(std::move(row));
    text << rep.newick << "  formula=" << rep.formula.get_str()
         << " certified=" << rep.certified_degree << " match=" << (rep.match ? "true" : "false")
         << "\n";
    csv << t.leaf_count() << "," << rep.newick << "," << rep.formula.get_str() << ","
        << rep.certified_degree << "," << (rep.match ? "true" : "false") << "\n";
  }
  nlohmann::json j;
  j["max_leaves"] = max_leaves;
  j["topologies"] = rows.size();
  j["all_match"] = all_match;
  j["rows"] = std::move(rows);
  if (g.format == "csv")
    std::cout << csv.str();
  else
    emit(j, g, text.str());
  return all_match ? kExitOk : kExitMismatch;
}

int cmd_star_origin(int n, const GlobalOpts& g) {
  const bool ok = bmt::star_origin_check(n, certify_options(g));
  nlohmann::json j;
  j["n"] = n;
  j["origin_only"] = ok;
  emit(j, g, std::string(ok ? "true" : "false") + "\n");
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brownian motion tree models: exact reciprocal ML-degree toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "base seed for generic data draws");
  app.add_option("--prime", g.prime, "override the leading certification prime");
  app.add_flag("--rational", g.rational, "run certifications exactly over Q");
  app.add_option("--tol", g.tol, "solver tolerance");
  app.add_option("--max-iter", g.max_iter, "solver iteration cap");
  app.add_option("--max-pairs", g.max_pairs, "Buchberger pair-reduction cap");
  app.add_option("--format", g.format, "output format: text|json|csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_flag("--no-timing", g.no_timing, "omit timings from JSON output");

  std::string tree_arg, cov_path;
  int ell = 0, m_count = 0, max_leaves = 5, star_n = 3;
  bool with_starred = false;

  auto* c_rmld = app.add_subcommand("rmld", "closed-form reciprocal ML-degree");
  c_rmld->add_option("tree", tree_arg, "Newick string or file")->required();

  auto* c_cert = app.add_subcommand("certify", "independent Groebner certification");
  c_cert->add_option("tree", tree_arg)->required();

  auto* c_mat = app.add_subcommand("matrices", "export the design and path matrices");
  c_mat->add_option("tree", tree_arg)->required();
  c_mat->add_flag("--starred", with_starred, "also export the starred path matrix");

  auto* c_ideal = app.add_subcommand("ideal", "quadratic binomial generators");
  c_ideal->add_option("tree", tree_arg)->required();

  auto* c_fit = app.add_subcommand("fit", "reciprocal MLE from a covariance CSV");
  c_fit->add_option("tree", tree_arg)->required();
  c_fit->add_option("covariance", cov_path, "n x n CSV, optional header")->required();

  auto* c_tfp = app.add_subcommand("check-tfp", "toric fiber product verification");
  c_tfp->add_option("tree", tree_arg, "the tree T' to glue onto")->required();
  c_tfp->add_option("--ell", ell, "non-root leaf of T' to glue at")->required();
  c_tfp->add_option("--m", m_count, "star size to glue in")->required();

  auto* c_enum = app.add_subcommand("enumerate", "sweep all topologies, formula vs certified");
  c_enum->add_option("--max-leaves", max_leaves)->check(CLI::Range(3, 7));

  auto* c_star = app.add_subcommand("star-origin", "origin-intersection check for star trees");
  c_star->add_option("n", star_n)->required()->check(CLI::Range(2, 5));

  // global flags may follow the subcommand name
  for (auto* sub : {c_rmld, c_cert, c_mat, c_ideal, c_fit, c_tfp, c_enum, c_star})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitError;
  }

  try {
    if (c_rmld->parsed()) return cmd_rmld(tree_arg, g);
    if (c_cert->parsed()) return cmd_certify(tree_arg, g);
    if (c_mat->parsed()) return cmd_matrices(tree_arg, with_starred, g);
    if (c_ideal->parsed()) return cmd_ideal(tree_arg, g);
    if (c_fit->parsed()) return cmd_fit(tree_arg, cov_path, g);
    if (c_tfp->parsed()) return cmd_check_tfp(tree_arg, ell, m_count, g);
    if (c_enum->parsed()) return cmd_enumerate(max_leaves, g);
    if (c_star->parsed()) return cmd_star_origin(star_n, g);
  } catch (const bmt::ResourceCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
