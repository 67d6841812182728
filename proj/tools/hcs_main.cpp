// Command-line front end: decompositions, Xi evaluation, C_d, ball
// enumeration, norm tables, the verification suite, and SVG plots.
#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "hcs/ball.hpp"
#include "hcs/boundary.hpp"
#include "hcs/group_function.hpp"
#include "hcs/haar.hpp"
#include "hcs/lie.hpp"
#include "hcs/report.hpp"
#include "hcs/svg.hpp"
#include "hcs/verify.hpp"
#include "hcs/xi_radial.hpp"

namespace {

using namespace hcs;

// "a,b;c,d" -> matrix
Eigen::MatrixXd parse_matrix(const std::string& lit) {
  std::vector<std::vector<double>> rows;
  std::string row;
  std::stringstream ss(lit);
  while (std::getline(ss, row, ';')) {
    rows.emplace_back();
    std::stringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) rows.back().push_back(std::stod(cell));
  }
  if (rows.empty()) throw CLI::ValidationError("empty matrix literal");
  const std::size_t n = rows.size();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw CLI::ValidationError("matrix literal is not square");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

GroupPresentation resolve_group(const std::string& group,
                                const std::string& generators) {
  if (!generators.empty()) {
    std::vector<Eigen::MatrixXd> gens;
    std::stringstream ss(generators);
    std::string one;
    while (std::getline(ss, one, '|')) gens.push_back(parse_matrix(one));
    return GroupPresentation::from_generators(
        group.empty() ? "custom" : group, gens);
  }
  return GroupPresentation::by_name(group.empty() ? "sanov" : group);
}

struct CommonOpts {
  std::string group = "sanov";
  std::string generators;
  int n = 2;
  double d = 0.0;
  int radius = 4;
  int R = 10;
  int grid = 1024;
  double cutoff = 30.0;
  unsigned seed = 42;
  bool deterministic = false;
  int threads = 0;
  std::string out = "out";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--group", o.group, "built-in presentation name")
      ->envname("HCS_GROUP");
  cmd->add_option("--generators", o.generators,
                  "custom generators, '|'-separated matrix literals")
      ->envname("HCS_GENERATORS");
  cmd->add_option("--n", o.n, "ambient dimension")->envname("HCS_N");
  cmd->add_option("--d", o.d, "decay exponent (0 = minimal admissible + 0.5)")
      ->envname("HCS_D");
  cmd->add_option("--radius", o.radius, "Gamma ball radius")
      ->envname("HCS_RADIUS");
  cmd->add_option("--R", o.R, "truncation radius")->envname("HCS_R");
  cmd->add_option("--grid", o.grid, "boundary grid resolution")
      ->envname("HCS_GRID");
  cmd->add_option("--cutoff", o.cutoff, "chamber cutoff |H|")
      ->envname("HCS_CUTOFF");
  cmd->add_option("--seed", o.seed, "random seed")->envname("HCS_SEED");
  cmd->add_flag("--deterministic", o.deterministic,
                "ordered reductions, byte-stable reports")
      ->envname("HCS_DETERMINISTIC");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)")
      ->envname("HCS_THREADS");
  cmd->add_option("--out", o.out, "output directory")->envname("HCS_OUT");
}

ExecConfig exec_of(const CommonOpts& o) {
  ExecConfig e;
  e.mode = o.deterministic ? Exec::ParallelDeterministic : Exec::Parallel;
  e.threads = o.threads;
  return e;
}

VerifyConfig verify_config(const CommonOpts& o) {
  VerifyConfig cfg;
  cfg.group = resolve_group(o.group, o.generators);
  cfg.d = o.d;
  cfg.radius = o.radius;
  cfg.R = o.R;
  cfg.grid_resolution = o.grid;
  cfg.chamber_cutoff = o.cutoff;
  cfg.seed = o.seed;
  cfg.deterministic = o.deterministic;
  cfg.exec = exec_of(o);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical workbench for Harish-Chandra-Schwartz norm "
               "inequalities on SL(n,R) and its discrete subgroups"};
  app.set_config("--config", "", "flat key=value config file");
  app.require_subcommand(1);

  // cartan
  auto* cartan = app.add_subcommand("cartan", "KAK decomposition of a matrix");
  std::string matrix_lit;
  cartan->add_option("--matrix", matrix_lit, "rows ';'-separated, entries ','")
      ->required();
  cartan->callback([&]() {
    const GroupElement g(parse_matrix(matrix_lit));
    const CartanTriple t = cartan_decompose(g);
    std::cout.precision(12);
    std::cout << "h = " << t.h.values().transpose() << "\n"
              << "L = " << t.h.norm() << "\n"
              << "k1 =\n" << t.k1.mat() << "\nk2 =\n" << t.k2.mat() << "\n"
              << "reconstruction residual = "
              << (t.k1.mat() *
                      t.h.values().array().exp().matrix().asDiagonal() *
                      t.k2.mat() -
                  g.mat()).norm() / g.mat().norm()
              << "\n";
  });

  // xi
  auto* xi = app.add_subcommand("xi", "Harish-Chandra function by both backends");
  CommonOpts xo;
  add_common(xi, xo);
  double xt = 1.0;
  std::string xmat;
  std::string method = "both";
  xi->add_option("--t", xt, "evaluate at a_t = diag-exp in SL(2)");
  xi->add_option("--matrix", xmat, "evaluate at this matrix instead");
  xi->add_option("--method", method, "boundary|iwasawa|radial|both");
  xi->callback([&]() {
    const int n = xmat.empty() ? 2 : (int)parse_matrix(xmat).rows();
    const GroupElement g =
        xmat.empty()
            ? GroupElement(Eigen::Vector2d(std::exp(xt / 2), std::exp(-xt / 2))
                               .asDiagonal()
                               .toDenseMatrix())
            : GroupElement(parse_matrix(xmat));
    const KQuadrature grid = build_k_quadrature(n, n == 2 ? xo.grid : 16);
    std::cout.precision(15);
    if (method == "boundary" || method == "both")
      std::cout << "xi_boundary = "
                << harish_chandra_xi(g, XiMethod::Boundary, grid, exec_of(xo))
                << "\n";
    if (method == "iwasawa" || method == "both")
      std::cout << "xi_iwasawa  = "
                << harish_chandra_xi(g, XiMethod::Iwasawa, grid, exec_of(xo))
                << "\n";
    if (method == "radial" || method == "both")
      std::cout << "xi_radial   = " << make_radial_xi(n)->at_group(g) << "\n";
    if (method == "both") {
      const double b = harish_chandra_xi(g, XiMethod::Boundary, grid, exec_of(xo));
      const double i = harish_chandra_xi(g, XiMethod::Iwasawa, grid, exec_of(xo));
      std::cout << "delta       = " << std::abs(b - i) << "\n";
    }
  });

  // cd
  auto* cd_cmd = app.add_subcommand("cd", "constant C_d with tail bound");
  CommonOpts co;
  add_common(cd_cmd, co);
  cd_cmd->callback([&]() {
    const int n = co.n;
    const RootSystemData roots = make_root_system(n);
    const double d = co.d > 0 ? co.d : min_admissible_d(roots) + 0.5;
    const ChamberQuadrature quad = build_chamber_quadrature(n, co.cutoff);
    const CdResult r = cd_constant(d, quad, *make_radial_xi(n), roots, exec_of(co));
    std::cout.precision(12);
    std::cout << "C_d(" << d << ") = " << r.value << "  (cutoff " << quad.cutoff
              << ", nodes " << quad.size() << ")\n"
              << "tail_bound = " << r.tail_bound << "\n"
              << "last_shell = " << r.last_shell << "\n"
              << "fitted decay constant C = " << r.c_fit << "\n";
  });

  // ball
  auto* ball_cmd = app.add_subcommand("ball", "enumerate and serialize a ball");
  CommonOpts bo;
  add_common(ball_cmd, bo);
  ball_cmd->callback([&]() {
    const GroupPresentation p = resolve_group(bo.group, bo.generators);
    auto ball = generate_ball(p, bo.radius);
    std::filesystem::create_directories(bo.out);
    ordered_json j;
    j["presentation"] = p.name;
    j["radius"] = ball->radius();
    ordered_json elems = ordered_json::array();
    for (std::size_t i = 0; i < ball->size(); ++i) {
      ordered_json e;
      e["index"] = i;
      e["word"] = ball->word(i);
      const Eigen::MatrixXd m = ball->matrix(i);
      ordered_json rows = ordered_json::array();
      for (int r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
      }
      e["matrix"] = rows;
      e["word_length"] = ball->word_length(i);
      elems.push_back(e);
    }
    j["elements"] = elems;
    const std::string path = bo.out + "/ball_" + p.name + "_r" +
                             std::to_string(ball->radius()) + ".json";
    std::ofstream(path) << j.dump(2) << "\n";
    std::cout << "|B(" << ball->radius() << ")| = " << ball->size() << " -> "
              << path << "\n";
    for (int r = 0; r <= ball->radius(); ++r)
      std::cout << "  |B(" << r << ")| = " << ball->sphere_end(r) << "\n";
  });

  // norms
  auto* norms_cmd =
      app.add_subcommand("norms", "per-element L, Xi, Sobolev/Schwartz table");
  CommonOpts no;
  add_common(norms_cmd, no);
  norms_cmd->callback([&]() {
    const GroupPresentation p = resolve_group(no.group, no.generators);
    const RootSystemData roots = make_root_system(p.n);
    const double d = no.d > 0 ? no.d : min_admissible_d(roots) + 0.5;
    auto ball = cached_ball(p, no.radius);
    const auto& L = ball->lengths();
    const auto& X = ball->xi_values();
    std::filesystem::create_directories(no.out);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < ball->size(); ++i)
      rows.push_back({(double)i, (double)ball->word_length(i), L[i], X[i],
                      std::pow(1.0 + L[i], d) / X[i],
                      std::pow(1.0 + L[i], d)});
    const std::string path = no.out + "/norms_" + p.name + "_r" +
                             std::to_string(no.radius) + ".csv";
    write_csv(path, {"index", "word_length", "L", "xi",
                     "schwartz_delta_norm", "sobolev_delta_norm"},
              rows);
    std::cout << "wrote " << rows.size() << " rows -> " << path << "\n";
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run verification statements");
  CommonOpts vo;
  add_common(verify_cmd, vo);
  std::string suite = "all";
  int corpus_size = 10;
  verify_cmd->add_option("--suite", suite,
                         "comma list of statements, or 'all'");
  verify_cmd->add_option("--corpus", corpus_size, "corpus size per sweep");
  verify_cmd->callback([&]() {
    VerifyConfig cfg = verify_config(vo);
    cfg.corpus_size = corpus_size;
    std::vector<std::string> ids;
    if (suite == "all") ids = statement_ids();
    else {
      std::stringstream ss(suite);
      std::string one;
      while (std::getline(ss, one, ',')) ids.push_back(one);
    }
    const ReportBundle bundle = run_suite(ids, cfg);
    std::filesystem::create_directories(vo.out);
    const std::string path = vo.out + "/report.json";
    bundle.write(path);
    for (const auto& r : bundle.reports)
      std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.statement_id << "\n";
    std::cout << "bundle -> " << path << "\n";
    if (!bundle.all_passed()) throw CLI::RuntimeError("verification failed", 1);
  });

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "emit SVG diagnostics");
  CommonOpts po;
  add_common(plot_cmd, po);
  std::string what = "xi-decay";
  plot_cmd->add_option("--what", what, "xi-decay|summability");
  plot_cmd->callback([&]() {
    std::filesystem::create_directories(po.out);
    if (what == "xi-decay") {
      svg::Series xi_s{"Xi(a_t)", {}, {}};
      svg::Series env{"e^{-t/2}(1+t/sqrt2)", {}, {}};
      for (double t = 0; t <= 20.0; t += 0.25) {
        xi_s.x.push_back(t);
        xi_s.y.push_back(xi_sl2_t(t));
        env.x.push_back(t);
        env.y.push_back(std::exp(-t / 2) * (1 + t / std::sqrt(2.0)));
      }
      const std::string path = po.out + "/xi_decay.svg";
      svg::write_line_plot(path, "Harish-Chandra function decay (SL2)", "t",
                           "value", {xi_s, env}, true);
      std::cout << "wrote " << path << "\n";
    } else if (what == "summability") {
      const GroupPresentation p = resolve_group(po.group, po.generators);
      const RootSystemData roots = make_root_system(p.n);
      const double d = po.d > 0 ? po.d : min_admissible_d(roots) + 0.5;
      const auto partial =
          xi_summability_partial(p, d, po.radius + 4, exec_of(po));
      svg::Series s{"partial sums", {}, {}};
      for (std::size_t i = 0; i < partial.size(); ++i) {
        s.x.push_back((double)(i + 1));
        s.y.push_back(partial[i]);
      }
      const std::string path = po.out + "/summability_" + p.name + ".svg";
      svg::write_line_plot(path,
                           "sum of Xi^2/(1+L)^{2d} over balls (" + p.name + ")",
                           "radius", "partial sum", {s});
      std::cout << "wrote " << path << "\n";
    } else {
      throw CLI::ValidationError("unknown plot kind " + what);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const hcs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
