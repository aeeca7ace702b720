// Copyright 2026 The tcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: graph generators, statistics, exact decomposition
// searches, gadget and transformer construction, the randomized procedures,
// and certificate verification.  Exit codes: 0 success, 1 domain-negative
// answer, 2 usage error, 3 failure or exhausted budget.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "tcd/absorb.hpp"
#include "tcd/extremal.hpp"
#include "tcd/gadgets.hpp"
#include "tcd/io.hpp"
#include "tcd/kgraph.hpp"
#include "tcd/randomized.hpp"
#include "tcd/solver.hpp"

namespace {

using namespace tcd;

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailed = 3;

KGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  return read_kgraph(in);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) fail(errc::parse_error, "cannot write " + path);
  out << text;
}

std::string graph_text(const KGraph& g) { return write_kgraph(g); }

std::string cert_text(const Certificate& c) {
  std::ostringstream os;
  write_certificate(os, c);
  return os.str();
}

std::string ledger_text(const std::vector<LedgerRow>& rows) {
  std::ostringstream os;
  write_ledger(os, rows);
  return os.str();
}

std::map<Vertex, Vertex> load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  std::map<Vertex, Vertex> phi;
  Vertex a, b;
  while (in >> a >> b) phi[a] = b;
  return phi;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tight-cycle decomposition toolkit"};
  app.require_subcommand(1);

  // ---- gen
  auto* gen = app.add_subcommand("gen", "generate a standard graph");
  std::vector<int> gen_complete, gen_cycle, gen_path;
  std::vector<int> gen_split;
  std::string gen_out;
  gen->add_option("--complete", gen_complete, "n k: complete graph")->expected(2);
  gen->add_option("--cycle", gen_cycle, "l k: tight cycle")->expected(2);
  gen->add_option("--path", gen_path, "l k: tight path")->expected(2);
  gen->add_option("--split", gen_split, "a b i k: two-class graph")->expected(4);
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");

  // ---- stats
  auto* stats = app.add_subcommand("stats", "degree statistics of a graph");
  std::string stats_in;
  stats->add_option("graph", stats_in, "input graph")->required();

  // ---- divisible
  auto* divisible = app.add_subcommand("divisible", "divisibility predicates");
  std::string div_in, div_kind = "cycle", div_pattern;
  int div_len = 0;
  divisible->add_option("graph", div_in)->required();
  divisible->add_option("--l", div_len, "piece length (vertices)");
  divisible->add_option("--kind", div_kind, "cycle | path");
  divisible->add_option("--pattern", div_pattern, "pattern graph for generic divisibility");

  // ---- decompose
  auto* dec = app.add_subcommand("decompose", "exact decomposition search");
  std::string dec_in, dec_kind = "cycles", dec_out, dec_pattern;
  int dec_len = 0;
  std::int64_t dec_budget = 2000000;
  dec->add_option("graph", dec_in)->required();
  dec->add_option("--kind", dec_kind, "cycles | paths | mixed | euler | pattern");
  dec->add_option("--l", dec_len, "piece length (vertices)");
  dec->add_option("--budget", dec_budget, "search node budget");
  dec->add_option("--pattern", dec_pattern, "pattern graph for --kind pattern");
  dec->add_option("-o,--out", dec_out, "certificate output");

  // ---- gadget
  auto* gad = app.add_subcommand("gadget", "construct a residual gadget");
  std::string gad_kind = "basic", gad_out;
  int gad_k = 3, gad_j = 2, gad_len = 0;
  bool gad_verify = false;
  gad->add_option("--kind", gad_kind, "basic | balancer | f1 | swapper1 | swapper");
  gad->add_option("--k", gad_k, "uniformity");
  gad->add_option("--j", gad_j, "position parameter");
  gad->add_option("--l", gad_len, "cycle length (default k^2-k+1)");
  gad->add_flag("--verify", gad_verify, "re-check the construction");
  gad->add_option("-o,--out", gad_out, "output path");

  // ---- tour-augment
  auto* aug = app.add_subcommand("tour-augment", "augment a graph to a tour decomposition");
  std::string aug_in, aug_out, aug_ledger, aug_ttd;
  int aug_len = 0;
  aug->add_option("graph", aug_in)->required();
  aug->add_option("--l", aug_len, "cycle length")->required();
  aug->add_option("-o,--out", aug_out, "certificate output for the added cycles");
  aug->add_option("--decomposition", aug_ttd, "tour decomposition output");
  aug->add_option("--ledger", aug_ledger, "stage ledger output");

  // ---- transformer
  auto* tr = app.add_subcommand("transformer", "build a transformer between graph copies");
  std::string tr_in, tr_map, tr_out1, tr_out2;
  int tr_len = 0, tr_offset = -1;
  tr->add_option("graph", tr_in)->required();
  tr->add_option("--l", tr_len, "cycle length")->required();
  tr->add_option("--map", tr_map, "vertex map file: lines `v image`");
  tr->add_option("--copy-offset", tr_offset, "use the shifted copy v -> v+offset");
  tr->add_option("--cert-with", tr_out1, "certificate for T with the original");
  tr->add_option("--cert-with-image", tr_out2, "certificate for T with the image");

  // ---- absorber
  auto* ab = app.add_subcommand("absorber", "assemble an absorber for a leftover");
  std::string ab_in, ab_out1, ab_out2;
  int ab_len = 0, ab_mcap = 14;
  std::int64_t ab_budget = 2000000;
  ab->add_option("graph", ab_in)->required();
  ab->add_option("--l", ab_len)->required();
  ab->add_option("--budget", ab_budget, "oracle budget");
  ab->add_option("--m-cap", ab_mcap, "largest clique size tried");
  ab->add_option("--cert-alone", ab_out1);
  ab->add_option("--cert-with", ab_out2);

  // ---- adjust-degrees
  auto* adj = app.add_subcommand("adjust-degrees", "remove a path-decomposable repair graph");
  std::string adj_in, adj_out, adj_cert, adj_ledger;
  int adj_len = 0;
  std::uint64_t adj_seed = 0;
  double adj_gamma = 0.1, adj_mu = 0.25;
  adj->add_option("graph", adj_in)->required();
  adj->add_option("--l", adj_len)->required();
  adj->add_option("--seed", adj_seed)->required();
  adj->add_option("--gamma", adj_gamma, "sparsity level for the anchor report");
  adj->add_option("--mu", adj_mu, "codegree threshold");
  adj->add_option("-o,--out", adj_out, "removed subgraph output");
  adj->add_option("--cert", adj_cert, "path certificate output");
  adj->add_option("--ledger", adj_ledger);

  // ---- vortex
  auto* vx = app.add_subcommand("vortex", "sample a nested degree vortex");
  std::string vx_in, vx_ledger;
  double vx_delta = 0.9, vx_xi = 0.5;
  int vx_m = 20, vx_retries = 100;
  std::uint64_t vx_seed = 0;
  vx->add_option("graph", vx_in)->required();
  vx->add_option("--delta", vx_delta);
  vx->add_option("--xi", vx_xi);
  vx->add_option("--m", vx_m, "target size of the last level");
  vx->add_option("--retries", vx_retries);
  vx->add_option("--seed", vx_seed)->required();
  vx->add_option("--ledger", vx_ledger);

  // ---- cover-down
  auto* cd = app.add_subcommand("cover-down", "cover everything outside a vertex core");
  std::string cd_in, cd_out, cd_ledger;
  int cd_len = 0, cd_ufirst = 0;
  double cd_alpha = 0.33, cd_mu = 0.7, cd_gamma = 0.3;
  std::vector<double> cd_ladder;
  std::uint64_t cd_seed = 0;
  cd->add_option("graph", cd_in)->required();
  cd->add_option("--l", cd_len)->required();
  cd->add_option("--u-first", cd_ufirst, "take the first N vertices as the core")->required();
  cd->add_option("--alpha", cd_alpha);
  cd->add_option("--mu", cd_mu);
  cd->add_option("--gamma", cd_gamma);
  cd->add_option("--p-ladder", cd_ladder, "reserve probabilities p_1..p_{k-1}");
  cd->add_option("--seed", cd_seed)->required();
  cd->add_option("-o,--out", cd_out, "packing certificate output");
  cd->add_option("--ledger", cd_ledger);

  // ---- extremal
  auto* ex = app.add_subcommand("extremal", "bound values and counterexample generators");
  std::string ex_kind = "bound", ex_out, ex_ledger;
  int ex_k = 3, ex_len = 4, ex_i = 1, ex_a = 4, ex_b = 4, ex_n = 12, ex_m = 2;
  double ex_eta = 0.01;
  std::uint64_t ex_seed = 0;
  ex->add_option("--kind", ex_kind, "bound | freeness | lowerbound | euler-cex");
  ex->add_option("--k", ex_k);
  ex->add_option("--l", ex_len);
  ex->add_option("--i", ex_i);
  ex->add_option("--a", ex_a);
  ex->add_option("--b", ex_b);
  ex->add_option("--n", ex_n);
  ex->add_option("--m", ex_m);
  ex->add_option("--eta", ex_eta);
  ex->add_option("--seed", ex_seed);
  ex->add_option("-o,--out", ex_out);
  ex->add_option("--ledger", ex_ledger);

  // ---- verify
  auto* ver = app.add_subcommand("verify", "re-check a certificate against a graph");
  std::string ver_graph, ver_cert, ver_pattern;
  ver->add_option("graph", ver_graph)->required();
  ver->add_option("cert", ver_cert)->required();
  ver->add_option("--pattern", ver_pattern, "pattern graph for copy certificates");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      KGraph g;
      if (!gen_complete.empty())
        g = complete_graph(gen_complete[0], gen_complete[1]);
      else if (!gen_cycle.empty())
        g = tight_cycle(gen_cycle[0], gen_cycle[1]);
      else if (!gen_path.empty())
        g = tight_path(gen_path[0], gen_path[1]);
      else if (!gen_split.empty()) {
        std::vector<Vertex> a = range_vertices(gen_split[0]);
        std::vector<Vertex> b;
        for (int t = 0; t < gen_split[1]; ++t) b.push_back(gen_split[0] + t);
        g = split_graph(a, b, gen_split[2], gen_split[3]);
      } else {
        std::cerr << "gen: pick one of --complete/--cycle/--path/--split\n";
        return kExitUsage;
      }
      emit(gen_out, graph_text(g));
      return kExitOk;
    }

    if (*stats) {
      const KGraph g = load_graph(stats_in);
      std::cout << "vertices\t" << g.vertices.size() << "\n";
      std::cout << "edges\t" << g.size() << "\n";
      for (int i = 0; i < g.k; ++i)
        std::cout << "degree" << i << "\t" << min_degree(g, i) << "\t" << max_degree(g, i) << "\n";
      if (binomial(static_cast<int>(g.vertices.size()), g.k - 1) >= 2)
        std::cout << "pair_common\t" << min_common_neighbors(g, 2) << "\n";
      return kExitOk;
    }

    if (*divisible) {
      const KGraph g = load_graph(div_in);
      bool yes = false;
      if (!div_pattern.empty()) {
        yes = is_f_divisible(g, load_graph(div_pattern));
      } else if (div_kind == "cycle") {
        yes = is_cycle_divisible(g, div_len);
      } else if (div_kind == "path") {
        yes = is_path_divisible(g, div_len);
      } else {
        std::cerr << "divisible: unknown kind\n";
        return kExitUsage;
      }
      std::cout << (yes ? "divisible" : "not-divisible") << "\n";
      return yes ? kExitOk : kExitNo;
    }

    if (*dec) {
      const KGraph g = load_graph(dec_in);
      SolveResult r;
      if (dec_kind == "cycles")
        r = decompose_cycles(g, dec_len, dec_budget);
      else if (dec_kind == "paths")
        r = decompose_paths(g, dec_len, dec_budget);
      else if (dec_kind == "mixed")
        r = decompose_mixed(g, dec_budget);
      else if (dec_kind == "euler")
        r = euler_tour(g, dec_budget);
      else if (dec_kind == "pattern")
        r = f_decompose(g, load_graph(dec_pattern), dec_budget);
      else {
        std::cerr << "decompose: unknown kind\n";
        return kExitUsage;
      }
      if (r.status == SolveStatus::found) {
        emit(dec_out, cert_text(*r.cert));
        return kExitOk;
      }
      std::cout << (r.status == SolveStatus::none ? "none" : "budget-exhausted") << "\n";
      return r.status == SolveStatus::none ? kExitNo : kExitFailed;
    }

    if (*gad) {
      const int len = gad_len > 0 ? gad_len : gad_k * gad_k - gad_k + 1;
      FreshVertexSupply supply;
      supply.reserve(range_vertices(64));
      OrderedTuple y, yp;
      for (int i = 0; i < gad_k; ++i) y.push_back(10 + i);
      for (int i = 0; i < gad_k; ++i) yp.push_back(30 + i);
      GadgetResult g;
      if (gad_kind == "basic")
        g = basic_gadget(gad_j, y, 0, 1, len, supply);
      else if (gad_kind == "balancer")
        g = balancer(gad_j, 0, 1, gad_k, len, supply);
      else if (gad_kind == "f1")
        g = f1_gadget(OrderedTuple(y.begin(), y.end() - 1), 0, 1, len, supply);
      else if (gad_kind == "swapper1")
        g = swapper1(OrderedTuple(y.begin(), y.end() - 1), OrderedTuple(yp.begin(), yp.end() - 1),
                     0, 1, len, supply);
      else if (gad_kind == "swapper")
        g = swapper(gad_j, OrderedTuple(y.begin(), y.end() - 1),
                    OrderedTuple(yp.begin(), yp.end() - 1), 0, 1, len, supply);
      else {
        std::cerr << "gadget: unknown kind\n";
        return kExitUsage;
      }
      std::ostringstream os;
      Certificate c;
      c.kind = Certificate::Kind::cycles;
      c.len = len;
      c.pieces = g.cycles;
      write_certificate(os, c);
      for (const OrderedTuple& t : g.claimed_residual) {
        os << "r";
        for (Vertex v : t) os << " " << v;
        os << "\n";
      }
      emit(gad_out, os.str());
      if (gad_verify) {
        auto report = verify_gadget(g);
        if (!report.ok) {
          for (const auto& f : report.failures) std::cerr << f << "\n";
          return kExitFailed;
        }
      }
      return kExitOk;
    }

    if (*aug) {
      const KGraph g = load_graph(aug_in);
      FreshVertexSupply supply;
      auto res = tour_augment(g, aug_len, supply);
      Certificate c;
      c.kind = Certificate::Kind::cycles;
      c.len = aug_len;
      c.pieces = res.added_cycles;
      emit(aug_out, cert_text(c));
      if (!aug_ttd.empty()) {
        std::ostringstream os;
        write_decomposition(os, res.tours, /*with_residual=*/true);
        emit(aug_ttd, os.str());
      }
      if (!aug_ledger.empty()) emit(aug_ledger, ledger_text(res.stage_log));
      return kExitOk;
    }

    if (*tr) {
      const KGraph g = load_graph(tr_in);
      std::map<Vertex, Vertex> phi;
      if (!tr_map.empty()) {
        phi = load_map(tr_map);
      } else if (tr_offset > 0) {
        for (Vertex v : g.vertices) phi[v] = v + tr_offset;
      } else {
        std::cerr << "transformer: give --map or --copy-offset\n";
        return kExitUsage;
      }
      std::vector<Edge> image;
      for (const Edge& e : g.edges) {
        Edge im;
        for (Vertex v : e) im.push_back(phi.at(v));
        std::sort(im.begin(), im.end());
        image.push_back(im);
      }
      KGraph gp = collect_graph(g.k, image);
      FreshVertexSupply supply;
      supply.reserve(g.vertices);
      supply.reserve(gp.vertices);
      auto res = transformer(g, gp, phi, tr_len, supply);
      emit(tr_out1, cert_text(res.cert_with_g));
      if (!tr_out2.empty()) emit(tr_out2, cert_text(res.cert_with_gp));
      return kExitOk;
    }

    if (*ab) {
      const KGraph g = load_graph(ab_in);
      FreshVertexSupply supply;
      auto res = absorber(g, ab_len, supply, ab_budget, ab_mcap);
      emit(ab_out1, cert_text(res.cert_alone));
      if (!ab_out2.empty()) emit(ab_out2, cert_text(res.cert_with_g));
      return kExitOk;
    }

    if (*adj) {
      const KGraph g = load_graph(adj_in);
      Rng rng(adj_seed);
      auto res = degree_adjuster(g, adj_len, rng, 0.05, adj_gamma, adj_mu);
      emit(adj_out, graph_text(res.removed));
      if (!adj_cert.empty()) emit(adj_cert, cert_text(res.path_cert));
      if (!adj_ledger.empty()) emit(adj_ledger, ledger_text(res.log));
      return kExitOk;
    }

    if (*vx) {
      const KGraph g = load_graph(vx_in);
      Rng rng(vx_seed);
      auto out = sample_vortex(g, vx_delta, vx_xi, vx_m, rng, vx_retries);
      std::vector<LedgerRow> rows;
      if (out.ok) {
        for (std::size_t i = 0; i < out.vortex.levels.size(); ++i)
          rows.push_back(ledger_row("level" + std::to_string(i), "size",
                                    std::to_string(out.vortex.levels[i].size())));
      } else {
        rows.push_back(ledger_row("vortex", "failure", out.failure));
      }
      emit(vx_ledger, ledger_text(rows));
      return out.ok ? kExitOk : kExitFailed;
    }

    if (*cd) {
      const KGraph g = load_graph(cd_in);
      std::vector<Vertex> u(g.vertices.begin(), g.vertices.begin() + cd_ufirst);
      CoverDownParams params;
      params.alpha = cd_alpha;
      params.mu = cd_mu;
      params.gamma = cd_gamma;
      params.keep = cd_ladder;
      Rng rng(cd_seed);
      auto out = cover_down(g, u, cd_len, params, rng);
      if (!cd_ledger.empty()) emit(cd_ledger, ledger_text(out.ledger));
      if (out.ok) {
        Certificate c;
        c.kind = Certificate::Kind::cycles;
        c.len = cd_len;
        c.pieces = out.packing;
        emit(cd_out, cert_text(c));
        return kExitOk;
      }
      std::cerr << out.failure << "\n";
      return kExitFailed;
    }

    if (*ex) {
      if (ex_kind == "bound") {
        auto info = bound_value(ex_k, ex_len);
        std::cout << "value\t" << info.value << "\n";
        std::cout << "floor\t" << info.universal_floor << "\n";
        if (info.closed_form) std::cout << "closed_form\t" << *info.closed_form << "\n";
        return kExitOk;
      }
      if (ex_kind == "freeness") {
        auto rep = check_cycle_free(ex_k, ex_len, ex_i, ex_a, ex_b);
        std::cout << "predicted\t" << (rep.predicted_free ? "free" : "unconstrained") << "\n";
        std::cout << "observed\t" << (rep.observed_free ? "free" : "has-cycles") << "\n";
        std::cout << "copies\t" << rep.copies << "\n";
        return (!rep.predicted_free || rep.observed_free) ? kExitOk : kExitNo;
      }
      if (ex_kind == "lowerbound") {
        if (ex->count("--seed") == 0) {
          std::cerr << "extremal --kind lowerbound is randomized and needs --seed\n";
          return kExitUsage;
        }
        Rng rng(ex_seed);
        auto rep = lower_bound_graph(ex_k, ex_len, ex_n, ex_eta, rng);
        emit(ex_out, graph_text(rep.graph));
        if (!ex_ledger.empty()) emit(ex_ledger, ledger_text(rep.ledger));
        return kExitOk;
      }
      if (ex_kind == "euler-cex") {
        auto rep = euler_counterexample(ex_k, ex_m);
        std::ostringstream os;
        os << "# special edge:";
        for (Vertex v : rep.special_edge) os << " " << v;
        os << "\n" << graph_text(rep.graph);
        emit(ex_out, os.str());
        return kExitOk;
      }
      std::cerr << "extremal: unknown kind\n";
      return kExitUsage;
    }

    if (*ver) {
      const KGraph g = load_graph(ver_graph);
      std::ifstream in(ver_cert);
      if (!in) fail(errc::parse_error, "cannot open " + ver_cert);
      const Certificate c = read_certificate(in, g.k);
      std::optional<KGraph> pattern;
      if (!ver_pattern.empty()) pattern = load_graph(ver_pattern);
      auto report = verify_certificate(g, c, pattern ? &*pattern : nullptr);
      if (report.ok) {
        std::cout << "ok\n";
        return kExitOk;
      }
      for (const auto& f : report.failures) std::cout << f << "\n";
      return kExitNo;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case errc::parse_error:
        return kExitUsage;
      case errc::oracle_failure:
      case errc::host_too_sparse:
        return kExitFailed;
      default:
        return kExitNo;
    }
  }
  return kExitUsage;
}
