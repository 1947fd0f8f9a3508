#include "isoform/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "isoform/deform.hpp"
#include "isoform/expression.hpp"
#include "isoform/generators.hpp"
#include "isoform/isothermic.hpp"
#include "isoform/minimal.hpp"
#include "isoform/moebius.hpp"
#include "isoform/obj_io.hpp"
#include "isoform/parallel.hpp"
#include "isoform/quadnet.hpp"
#include "isoform/report.hpp"

namespace isoform {

namespace {

std::vector<double> eval_on(const Expression& ex, const Realization& r, const std::vector<double>* radius = nullptr,
                            const std::vector<double>* theta = nullptr) {
  std::vector<double> out(r.mesh().vertex_count());
  for (int v = 0; v < r.mesh().vertex_count(); ++v) {
    const Vec3& p = r.position(v);
    ExprVars vars;
    vars.x = p.x();
    vars.y = p.y();
    vars.r = radius ? (*radius)[v] : std::hypot(p.x(), p.y());
    if (theta) {
      vars.theta = (*theta)[v];
    } else {
      vars.theta = std::atan2(p.y(), p.x());
      if (vars.theta < 0) vars.theta += 2 * M_PI;
    }
    out[v] = ex.eval(vars);
  }
  return out;
}

QuadNet read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cli-io", "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw Error("cli-io", std::string("bad grid JSON: ") + e.what());
  }
  std::vector<Vec3> pts;
  for (const auto& p : j.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>());
  return QuadNet(j.at("M").get<int>(), j.at("N").get<int>(), std::move(pts));
}

void write_text(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cli-io", "cannot write '" + path + "'");
  fn(out);
}

}  // namespace

int run(int argc, char** argv) {
  configure_threads_from_env();
  CLI::App app{"isoform: isothermic triangulated surfaces and discrete minimal surfaces"};
  app.require_subcommand(1);
  int exit_code = 0;

  // check-isothermic
  auto* check = app.add_subcommand("check-isothermic", "Decide whether a mesh is isothermic");
  std::string check_in, check_json;
  double check_tol = 1e-8;
  check->add_option("mesh", check_in, "OBJ file, or - for stdin")->required();
  check->add_option("--tol", check_tol, "Relative rank tolerance")->check(CLI::PositiveNumber);
  check->add_option("--json", check_json, "Write the JSON report here");
  check->callback([&] {
    Realization r = to_realization(read_obj_file(check_in));
    SelfStressBasis b = isothermic_basis(r, check_tol);
    Json j = mesh_report(r);
    j["self_stress"] = stress_report(b);
    if (r.mesh().is_closed()) j["conformal_dimension"] = conformal_report(conformal_dimension(r, check_tol));
    bool on_sphere = true;
    double rad = r.position(0).norm();
    for (const auto& p : r.positions()) on_sphere = on_sphere && std::abs(p.norm() - rad) <= 1e-9 * rad;
    if (on_sphere && rad > 0) j["inscribed"] = inscribed_report(inscribed_diagnostics(r, check_tol));
    if (!check_json.empty()) write_json_file(check_json, j);
    std::cout << "verdict " << to_string(b.verdict) << " nullity " << b.nullity << " (" << b.rows << "x" << b.cols
              << ")\n";
    exit_code = b.verdict == Verdict::isothermic ? 0 : 2;
  });

  // minimal
  auto* minimal = app.add_subcommand("minimal", "Discrete minimal surface from Weierstrass data");
  std::string domain = "square", boundary_expr, min_out, gauss_out, min_report;
  int min_n = 20, min_nr = 0;
  double r_inner = 0.5, r_outer = 2.0, half = 1.0, stereo_radius = 0;
  minimal->add_option("--domain", domain, "square|annulus")->check(CLI::IsMember({"square", "annulus"}));
  minimal->add_option("--n", min_n, "Grid size (square) or angular count (annulus)")->check(CLI::Range(3, 100000));
  minimal->add_option("--n-r", min_nr, "Radial ring count for the annulus (default n/4 + 2)");
  minimal->add_option("--r-inner", r_inner);
  minimal->add_option("--r-outer", r_outer);
  minimal->add_option("--half", half, "Half-width of the square domain");
  minimal->add_option("--radius", stereo_radius, "Stereographic radius (default 1, or sqrt(r_in r_out))");
  minimal->add_option("--boundary", boundary_expr, "Boundary expression in x, y, r, theta")->required();
  minimal->add_option("--out", min_out, "Dual mesh OBJ")->required();
  minimal->add_option("--gauss", gauss_out, "Gauss map OBJ");
  minimal->add_option("--report", min_report, "JSON report");
  minimal->callback([&] {
    Expression ex = Expression::parse(boundary_expr);
    Domain dom = domain == "square"
                     ? square_domain(min_n, half)
                     : cut_annulus(r_inner, r_outer, min_nr > 0 ? min_nr : min_n / 4 + 2, min_n);
    WeierstrassConfig cfg;
    cfg.stereographic_radius =
        stereo_radius > 0 ? stereo_radius : (domain == "square" ? 1.0 : std::sqrt(r_inner * r_outer));
    auto bvals = eval_on(ex, dom.realization, &dom.r, &dom.theta);
    WeierstrassResult res = weierstrass(dom.realization, bvals, dom.seam, cfg);
    write_text(min_out, [&](std::ostream& os) {
      write_polygons(os, res.surface.fstar, dual_polygons(dom.realization.mesh()));
    });
    if (!gauss_out.empty()) write_obj_file(gauss_out, res.surface.source);
    Json j;
    j["schema"] = kReportSchema;
    j["domain"] = {{"kind", domain}, {"n", min_n}, {"boundary", boundary_expr}};
    j["mesh"] = mesh_report(dom.realization);
    j["harmonic"] = {{"solver", res.harmonic.solver}, {"relative_residual", res.harmonic.relative_residual}};
    j["planar_residuals"] = to_json(res.planar_residuals);
    j["transport"] = {{"residuals", to_json(res.transport.residuals)},
                      {"amplification", res.transport.amplification}};
    j["dual"] = {{"relative_closure", res.relative_closure},
                 {"parallel_deviation", res.surface.parallel.max_deviation},
                 {"zero_dual_edges", res.surface.parallel.zero_edges},
                 {"duality_sum", res.surface.duality_sum},
                 {"gauss_sphere_deviation", res.surface.sphere_deviation}};
    if (!min_report.empty()) write_json_file(min_report, j);
  });

  // deform harmonic-normal
  auto* deform = app.add_subcommand("deform", "Infinitesimal deformations");
  deform->require_subcommand(1);
  auto* hn = deform->add_subcommand("harmonic-normal", "Normal deformation u N of a planar mesh");
  std::string hn_in, u_expr, hn_out = "-";
  bool hn_solve = false;
  hn->add_option("mesh", hn_in)->required();
  hn->add_option("--u-expr", u_expr, "u as an expression in x, y, r, theta")->required();
  hn->add_flag("--harmonic", hn_solve, "Use the expression as boundary data and solve for harmonic u");
  hn->add_option("--out", hn_out, "field.json");
  hn->callback([&] {
    Expression ex = Expression::parse(u_expr);
    Realization r = to_realization(read_obj_file(hn_in));
    std::vector<double> u = eval_on(ex, r);
    if (hn_solve) u = solve_dirichlet(r, u).u;
    HarmonicNormalField f = harmonic_normal_deformation(r, u);
    Json j;
    j["schema"] = kReportSchema;
    j["f_dot"] = to_json(f.fdot);
    j["Z"] = to_json(f.Z);
    j["sigma"] = f.sigma;
    j["Hdot"] = f.Hdot;
    write_json_file(hn_out, j);
  });

  // moebius apply
  auto* moeb = app.add_subcommand("moebius", "Moebius transformations");
  moeb->require_subcommand(1);
  auto* mapply = moeb->add_subcommand("apply", "Apply a chain of primitives");
  std::string m_in, m_chain, m_out = "-";
  mapply->add_option("mesh", m_in)->required();
  mapply->add_option("--chain", m_chain, "e.g. \"translate 0 0 2; invert; scale 0.5\"")->required();
  mapply->add_option("--out", m_out);
  mapply->callback([&] {
    MoebiusMap map = MoebiusMap::parse(m_chain);
    Realization r = to_realization(read_obj_file(m_in));
    write_obj_file(m_out, apply(map, r));
  });

  // quadnet
  auto* qn = app.add_subcommand("quadnet", "Isothermic quad nets");
  qn->require_subcommand(1);
  std::string q_in, q_out = "-", q_diag = "all-ne", q_report;
  double q_tol = 1e-10;
  auto* qcheck = qn->add_subcommand("check", "Cross-ratio factorization");
  auto* qdual = qn->add_subcommand("dual", "Christoffel dual net");
  auto* qsub = qn->add_subcommand("subdivide", "Triangulate with the rotation rule");
  for (auto* sc : {qcheck, qdual, qsub}) {
    sc->add_option("grid", q_in, "grid.json {M, N, points}")->required();
    sc->add_option("--tol", q_tol)->check(CLI::PositiveNumber);
  }
  qdual->add_option("--out", q_out);
  qsub->add_option("--out", q_out, "Triangulated OBJ");
  qsub->add_option("--diag", q_diag, "all-ne|all-nw|alternating|random:<seed>");
  qsub->add_option("--report", q_report);
  auto factor_json = [](const Factorization& f) {
    return Json{{"alpha", f.alpha},         {"beta", f.beta},
                {"residual", f.residual},   {"max_imaginary", f.max_imaginary},
                {"all_real", f.all_real},   {"factorized", f.factorized}};
  };
  qcheck->callback([&] {
    QuadNet net = read_grid(q_in);
    Factorization f = fit_factorization(net, q_tol);
    Json j = factor_json(f);
    j["schema"] = kReportSchema;
    write_json_file("-", j);
    exit_code = f.factorized ? 0 : 2;
  });
  qdual->callback([&] {
    QuadNet net = read_grid(q_in);
    Factorization f = fit_factorization(net, q_tol);
    if (!f.factorized) throw Error("quadnet", "cross-ratios do not factorize (residual " + std::to_string(f.residual) + ")");
    QuadDual d = quad_dual(net, f);
    Json j;
    j["schema"] = kReportSchema;
    j["M"] = net.M;
    j["N"] = net.N;
    j["points"] = to_json(d.points);
    j["closure"] = d.closure;
    j["diagonal_residual"] = d.diagonal_residual;
    write_json_file(q_out, j);
  });
  qsub->callback([&] {
    QuadNet net = read_grid(q_in);
    Factorization f = fit_factorization(net, q_tol);
    if (!f.factorized) throw Error("quadnet", "cross-ratios do not factorize (residual " + std::to_string(f.residual) + ")");
    QuadDual d = quad_dual(net, f);
    Subdivision s = subdivide_and_rotate(net, d, diagonal_pattern(net, q_diag));
    write_obj_file(q_out, s.realization);
    if (!q_report.empty()) {
      Json j;
      j["schema"] = kReportSchema;
      j["compatibility"] = s.compatibility;
      j["max_Hdot"] = s.max_Hdot;
      j["Z"] = to_json(s.Z);
      write_json_file(q_report, j);
    }
  });

  // gen
  auto* gen = app.add_subcommand("gen", "Reference meshes");
  gen->require_subcommand(1);
  std::string g_out = "-";
  int g_n = 10, g_nr = 6, g_nt = 24, g_extent = 3;
  double g_rin = 0.5, g_rout = 1.0, g_half = 1.0;
  bool g_cut = false;
  CylinderParams cyl;
  std::string g_which = "icosa";
  auto* ggrid = gen->add_subcommand("grid", "n x n grid on the unit square");
  ggrid->add_option("--n", g_n)->check(CLI::Range(2, 100000));
  auto* gsquare = gen->add_subcommand("square", "n x n grid on [-half, half]^2");
  gsquare->add_option("--n", g_n)->check(CLI::Range(2, 100000));
  gsquare->add_option("--half", g_half)->check(CLI::PositiveNumber);
  auto* gann = gen->add_subcommand("annulus", "Planar annulus");
  gann->add_option("--rin", g_rin);
  gann->add_option("--rout", g_rout);
  gann->add_option("--nr", g_nr);
  gann->add_option("--ntheta", g_nt);
  gann->add_flag("--cut", g_cut, "Cut along the positive x-axis");
  auto* gjes = gen->add_subcommand("jessen", "Jessen's orthogonal icosahedron");
  auto* gcyl = gen->add_subcommand("cylinder", "Homogeneous screw-motion cylinder window");
  gcyl->add_option("--r", cyl.r);
  gcyl->add_option("--theta1", cyl.theta1);
  gcyl->add_option("--h1", cyl.h1);
  gcyl->add_option("--theta2", cyl.theta2);
  gcyl->add_option("--h2", cyl.h2);
  gcyl->add_option("--extent", g_extent, "Window half extent");
  auto* gplat = gen->add_subcommand("platonic", "Inscribed Platonic solid");
  gplat->add_option("--which", g_which, "tetra|octa|icosa");
  for (auto* sc : {ggrid, gsquare, gann, gjes, gcyl, gplat}) sc->add_option("--out", g_out, "OBJ path or -");
  ggrid->callback([&] { write_obj_file(g_out, grid_disk(g_n).realization); });
  gsquare->callback([&] { write_obj_file(g_out, square_domain(g_n, g_half).realization); });
  gann->callback([&] {
    write_obj_file(g_out, (g_cut ? cut_annulus(g_rin, g_rout, g_nr, g_nt) : annulus(g_rin, g_rout, g_nr, g_nt)).realization);
  });
  gjes->callback([&] { write_obj_file(g_out, jessen()); });
  gcyl->callback([&] {
    cyl.half_extent = g_extent;
    write_obj_file(g_out, homogeneous_cylinder(cyl).realization);
  });
  gplat->callback([&] { write_obj_file(g_out, platonic(parse_platonic(g_which))); });

  // angles
  auto* angles = app.add_subcommand("angles", "Circumcircle and circumsphere intersection angles");
  std::string a_in, a_json = "-", a_kind = "circles";
  angles->add_option("mesh", a_in)->required();
  angles->add_option("--kind", a_kind)->check(CLI::IsMember({"circles", "spheres"}));
  angles->add_option("--json", a_json);
  angles->callback([&] {
    Realization r = to_realization(read_obj_file(a_in));
    Json items = Json::array();
    if (a_kind == "circles") {
      for (int e : r.mesh().interior_edges()) items.push_back({{"edge", e}, {"angle", circumcircle_angle(r, e)}});
    } else {
      for (auto [a, b] : neighboring_sphere_pairs(r.mesh())) {
        SphereAngle s = circumsphere_angle(r, a, b);
        items.push_back({{"edges", {a, b}}, {"degenerate", s.degenerate}, {"angle", s.angle}});
      }
    }
    Json j;
    j["schema"] = kReportSchema;
    j["kind"] = a_kind;
    j["items"] = items;
    write_json_file(a_json, j);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "[cli-io] " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}

}  // namespace isoform
