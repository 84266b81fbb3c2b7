#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "contexture/logic.hpp"
#include "contexture/partition.hpp"
#include "contexture/polytope.hpp"
#include "contexture/quantum.hpp"
#include "contexture/ray.hpp"
#include "contexture/states.hpp"

using namespace contexture;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

struct LogicInput {
  std::string builtin_name, path;

  void attach(CLI::App* cmd, bool required = true) {
    auto* b = cmd->add_option("--builtin", builtin_name,
                              "built-in logic (mo2, l12, bug, cabello, "
                              "pentagon, triangle, quadrangle)");
    auto* f = cmd->add_option("--in", path, "logic file (.gdl)");
    b->excludes(f);
    if (required) {
      // one of the two
      cmd->callback([this, cmd]() {
        if (builtin_name.empty() && path.empty())
          throw CLI::ValidationError(cmd->get_name(),
                                     "need --builtin or --in");
      });
    }
  }

  Logic get() const {
    if (!builtin_name.empty()) return builtin(builtin_name);
    return parse_logic(slurp(path));
  }
};

struct RayInput {
  std::string set_name, path;
  std::size_t dim = 3;

  void attach(CLI::App* cmd) {
    auto* s = cmd->add_option("--set", set_name,
                              "built-in ray set (peres, cabello)");
    auto* f = cmd->add_option("--in", path, "ray file (.rays)");
    cmd->add_option("--dim", dim, "space dimension for --in (default 3)");
    s->excludes(f);
    cmd->callback([this, cmd]() {
      if (set_name.empty() && path.empty())
        throw CLI::ValidationError(cmd->get_name(), "need --set or --in");
    });
  }

  std::vector<Ray> get(std::size_t* d) const {
    if (set_name == "peres") {
      *d = 3;
      return peres_rays();
    }
    if (set_name == "cabello") {
      *d = 4;
      return cabello_rays().rays;
    }
    if (!set_name.empty())
      throw std::runtime_error("unknown ray set '" + set_name + "'");
    *d = dim;
    return parse_rays(slurp(path));
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> ray_names(const std::vector<Ray>& rays) {
  std::vector<std::string> names;
  for (const auto& r : rays) names.push_back(r.label.empty() ? r.str() : r.label);
  return names;
}

std::string states_pretty(const StateSet& ss,
                          const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t k = 0; k < ss.states.size(); ++k) {
    os << 'm' << (k + 1) << " :";
    for (std::size_t a = 0; a < names.size(); ++a)
      if (ss.states[k][a]) os << ' ' << names[a];
    os << '\n';
  }
  os << "# classification: " << to_string(ss.classification) << '\n';
  return os.str();
}

ProbVector parse_weights(const std::string& csv) {
  ProbVector v;
  for (const auto& tok : split(csv, ',')) v.weights.push_back(Rational::parse(tok));
  v.validate();
  return v;
}

std::pair<std::size_t, std::size_t> parse_scheme(const std::string& s) {
  auto parts = split(s, '-');
  if (parts.size() != 2)
    throw std::runtime_error("scheme must look like '2-2'");
  return {std::stoul(parts[0]), std::stoul(parts[1])};
}

Mat parse_matrix(const std::string& csv) {
  auto toks = split(csv, ',');
  std::size_t n = 0;
  while (n * n < toks.size()) ++n;
  if (n * n != toks.size())
    throw std::runtime_error("matrix needs a square number of entries");
  Mat m(n);
  for (std::size_t i = 0; i < toks.size(); ++i) m.a[i] = std::stod(toks[i]);
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contexture: contexts, two-valued states, Kochen-Specker "
               "certificates, urn/automaton models, correlation polytopes, "
               "quantum bounds"};
  app.require_subcommand(1);

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--threads", threads, "worker pool size")
      ->envname("CONTEXTURE_THREADS");
  std::string out_path;
  app.add_option("-o,--out", out_path, "output file (default stdout)");
  std::string format = "csv";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "csv"}));

  std::function<int()> action;

  // ---- logic ----
  auto* logic_cmd = app.add_subcommand("logic", "pasted logics (Greechie diagrams)");
  {
    auto* parse = logic_cmd->add_subcommand("parse", "parse and re-render a logic");
    auto in = std::make_shared<LogicInput>();
    in->attach(parse);
    parse->callback([&, in]() {
      action = [&, in]() {
        emit(out_path, render_logic(in->get()));
        return 0;
      };
    });

    auto* validate = logic_cmd->add_subcommand("validate", "check logic invariants");
    auto vin = std::make_shared<LogicInput>();
    vin->attach(validate);
    validate->callback([&, vin]() {
      action = [&, vin]() {
        Logic l = vin->get();
        std::ostringstream os;
        os << "OK: " << l.atoms.size() << " atoms, " << l.blocks.size()
           << " blocks\n";
        emit(out_path, os.str());
        return 0;
      };
    });

    auto* links = logic_cmd->add_subcommand("links", "list link atoms");
    auto lin = std::make_shared<LogicInput>();
    lin->attach(links);
    links->callback([&, lin]() {
      action = [&, lin]() {
        Logic l = lin->get();
        auto rep = link_report(l);
        std::ostringstream os;
        for (auto a : rep.link_atoms) {
          os << l.atoms[a] << " :";
          for (auto b : rep.blocks_of[a]) os << ' ' << l.block_names[b];
          os << '\n';
        }
        emit(out_path, os.str());
        return 0;
      };
    });

    auto* pst = logic_cmd->add_subcommand("paste", "paste logics with identifications");
    auto files = std::make_shared<std::vector<std::string>>();
    auto ids = std::make_shared<std::vector<std::string>>();
    pst->add_option("--in", *files, "logic files, in order")->required();
    pst->add_option("--identify", *ids,
                    "identification i.atomA=j.atomB (repeatable)");
    pst->callback([&, files, ids]() {
      action = [&, files, ids]() {
        std::vector<Logic> logics;
        for (const auto& f : *files) logics.push_back(parse_logic(slurp(f)));
        std::vector<Identification> merge;
        for (const auto& spec : *ids) {
          auto sides = split(spec, '=');
          if (sides.size() != 2)
            throw std::runtime_error("identification must be i.a=j.b");
          auto pa = sides[0].find('.');
          auto pb = sides[1].find('.');
          if (pa == std::string::npos || pb == std::string::npos)
            throw std::runtime_error("identification must be i.a=j.b");
          merge.push_back({std::stoul(sides[0].substr(0, pa)),
                           sides[0].substr(pa + 1),
                           std::stoul(sides[1].substr(0, pb)),
                           sides[1].substr(pb + 1)});
        }
        emit(out_path, render_logic(paste(logics, merge)));
        return 0;
      };
    });
  }

  // ---- states ----
  auto* states_cmd = app.add_subcommand("states", "two-valued states");
  {
    auto add_states_like = [&](const char* name, const char* help,
                               auto handler) {
      auto* cmd = states_cmd->add_subcommand(name, help);
      auto lin = std::make_shared<LogicInput>();
      lin->attach(cmd, false);
      auto rin = std::make_shared<RayInput>();
      auto* s = cmd->add_option("--set", rin->set_name,
                                "built-in ray set (peres, cabello)");
      auto* rf = cmd->add_option("--rays", rin->path, "ray file (.rays)");
      cmd->add_option("--dim", rin->dim, "ray space dimension for --rays");
      s->excludes(rf);
      cmd->callback([&, cmd, lin, rin, handler]() {
        if (lin->builtin_name.empty() && lin->path.empty() &&
            rin->set_name.empty() && rin->path.empty())
          throw CLI::ValidationError(cmd->get_name(),
                                     "need --builtin, --in, --set, or --rays");
        action = [&, lin, rin, handler]() {
          StateSet ss;
          std::vector<std::string> names;
          if (!rin->set_name.empty() || !rin->path.empty()) {
            std::size_t d = 0;
            auto rays = rin->get(&d);
            auto g = ortho_graph(std::move(rays));
            ss = enumerate_ray_states(g, d, threads);
            names = ray_names(g.rays);
          } else {
            Logic l = lin->get();
            ss = enumerate_states(l, threads);
            names = l.atoms;
          }
          return handler(ss, names);
        };
      });
      return cmd;
    };

    add_states_like("enumerate", "enumerate all two-valued states",
                    [&](const StateSet& ss, const std::vector<std::string>& names) {
                      emit(out_path, format == "text" ? states_pretty(ss, names)
                                                      : states_csv(ss, names));
                      if (ss.states.empty()) {
                        std::cerr << "no two-valued state\n";
                        return 2;
                      }
                      return 0;
                    });

    add_states_like("classify", "classify the state set",
                    [&](const StateSet& ss, const std::vector<std::string>&) {
                      emit(out_path, to_string(ss.classification) + "\n");
                      return ss.states.empty() ? 2 : 0;
                    });

    auto* parity = states_cmd->add_subcommand("parity", "parity obstruction check");
    auto pin = std::make_shared<LogicInput>();
    pin->attach(parity);
    parity->callback([&, pin]() {
      action = [&, pin]() {
        auto pc = parity_certificate(pin->get());
        emit(out_path, pc.detail + "\n");
        return pc.applies ? 2 : 0;
      };
    });
  }

  // ---- rays ----
  auto* rays_cmd = app.add_subcommand("rays", "ray sets and orthogonality");
  {
    auto* gen = rays_cmd->add_subcommand("gen", "emit a built-in ray set");
    auto gin = std::make_shared<RayInput>();
    gin->attach(gen);
    gen->callback([&, gin]() {
      action = [&, gin]() {
        std::size_t d = 0;
        emit(out_path, render_rays(gin->get(&d)));
        return 0;
      };
    });

    auto* ortho = rays_cmd->add_subcommand("ortho", "orthogonality graph edges");
    auto oin = std::make_shared<RayInput>();
    oin->attach(ortho);
    ortho->callback([&, oin]() {
      action = [&, oin]() {
        std::size_t d = 0;
        auto g = ortho_graph(oin->get(&d));
        auto names = ray_names(g.rays);
        std::ostringstream os;
        for (const auto& [i, j] : g.edges)
          os << names[i] << ' ' << names[j] << '\n';
        emit(out_path, os.str());
        return 0;
      };
    });

    auto* ctx = rays_cmd->add_subcommand("contexts", "maximal orthogonal cliques");
    auto cin = std::make_shared<RayInput>();
    cin->attach(ctx);
    ctx->callback([&, cin]() {
      action = [&, cin]() {
        std::size_t d = 0;
        auto g = ortho_graph(cin->get(&d));
        auto names = ray_names(g.rays);
        std::ostringstream os;
        for (const auto& clique : contexts_from_rays(g, d)) {
          for (std::size_t i = 0; i < clique.size(); ++i)
            os << (i ? " " : "") << names[clique[i]];
          os << '\n';
        }
        emit(out_path, os.str());
        return 0;
      };
    });

    auto* ks = rays_cmd->add_subcommand("ks-check", "Kochen-Specker colorability");
    auto kin = std::make_shared<RayInput>();
    kin->attach(ks);
    ks->callback([&, kin]() {
      action = [&, kin]() {
        std::size_t d = 0;
        auto g = ortho_graph(kin->get(&d));
        auto ss = enumerate_ray_states(g, d, threads);
        std::ostringstream os;
        if (ss.states.empty()) {
          os << "UNCOLORABLE: " << g.rays.size()
             << " rays admit no two-valued state\n";
          emit(out_path, os.str());
          return 2;
        }
        os << "COLORABLE: " << ss.states.size() << " two-valued state(s), "
           << to_string(ss.classification) << '\n';
        emit(out_path, os.str());
        return 0;
      };
    });

    auto* nor = rays_cmd->add_subcommand("nor-closure",
                                         "close a d=3 seed set under cross products");
    auto nin = std::make_shared<RayInput>();
    nin->attach(nor);
    auto rounds = std::make_shared<int>(10);
    auto nonorth = std::make_shared<bool>(false);
    nor->add_option("--max-rounds", *rounds, "round cap (default 10)");
    nor->add_flag("--nonorthogonal-only", *nonorth,
                  "generate only from non-orthogonal pairs");
    nor->callback([&, nin, rounds, nonorth]() {
      action = [&, nin, rounds, nonorth]() {
        std::size_t d = 0;
        emit(out_path, render_rays(nor_closure(nin->get(&d), *rounds, *nonorth)));
        return 0;
      };
    });
  }

  // ---- partition ----
  auto* part_cmd = app.add_subcommand("partition", "partition logics and models");
  {
    auto with_partition = [&](CLI::App* cmd, auto handler) {
      auto lin = std::make_shared<LogicInput>();
      lin->attach(cmd);
      cmd->callback([&, lin, handler]() {
        action = [&, lin, handler]() {
          Logic l = lin->get();
          auto ss = enumerate_states(l, threads);
          if (ss.states.empty())
            throw std::runtime_error(
                "logic has no two-valued states; no partition logic exists");
          return handler(partition_from_states(l, ss.states));
        };
      });
      return cmd;
    };

    with_partition(
        part_cmd->add_subcommand("build", "partition logic of a logic's states"),
        [&](const PartitionLogic& pl) {
          emit(out_path, partition_text(pl));
          return 0;
        });

    {
      auto* urn = part_cmd->add_subcommand("urn", "synthesize a generalized urn model");
      auto scheme = std::make_shared<std::string>("atoms");
      urn->add_option("--symbols", *scheme, "symbol scheme")
          ->check(CLI::IsMember({"atoms", "rank"}));
      auto lin = std::make_shared<LogicInput>();
      lin->attach(urn);
      urn->callback([&, lin, scheme]() {
        action = [&, lin, scheme]() {
          Logic l = lin->get();
          auto ss = enumerate_states(l, threads);
          if (ss.states.empty())
            throw std::runtime_error("logic has no two-valued states");
          auto pl = partition_from_states(l, ss.states);
          auto u = urn_from_partition(pl, *scheme == "rank"
                                              ? SymbolScheme::CompactRank
                                              : SymbolScheme::AtomLabels);
          emit(out_path, urn_tsv(u));
          return 0;
        };
      });
    }

    {
      auto* aut = part_cmd->add_subcommand("automaton", "synthesize a Mealy automaton");
      auto star = std::make_shared<bool>(false);
      aut->add_flag("--star", *star, "per-atom output tables with * padding");
      auto lin = std::make_shared<LogicInput>();
      lin->attach(aut);
      aut->callback([&, lin, star]() {
        action = [&, lin, star]() {
          Logic l = lin->get();
          auto ss = enumerate_states(l, threads);
          if (ss.states.empty())
            throw std::runtime_error("logic has no two-valued states");
          auto pl = partition_from_states(l, ss.states);
          if (!*star) {
            emit(out_path, automaton_tsv(automaton_from_partition(pl)));
            return 0;
          }
          auto tables = automaton_star_outputs(pl);
          std::ostringstream os;
          for (std::size_t b = 0; b < tables.size(); ++b) {
            os << "# input " << pl.block_names[b] << "\nstate";
            for (auto a : pl.blocks[b]) os << '\t' << pl.atom_names[a];
            os << '\n';
            for (std::size_t k = 0; k < pl.num_states; ++k) {
              os << (k + 1);
              for (const auto& cell : tables[b][k]) os << '\t' << cell;
              os << '\n';
            }
          }
          emit(out_path, os.str());
          return 0;
        };
      });
    }

    {
      auto* cmd = part_cmd->add_subcommand("to-automaton", "urn TSV -> automaton TSV");
      auto in = std::make_shared<std::string>();
      cmd->add_option("--in", *in, "urn TSV file")->required();
      cmd->callback([&, in]() {
        action = [&, in]() {
          emit(out_path, automaton_tsv(urn_to_automaton(parse_urn_tsv(slurp(*in)))));
          return 0;
        };
      });
    }
    {
      auto* cmd = part_cmd->add_subcommand("to-urn", "automaton TSV -> urn TSV");
      auto in = std::make_shared<std::string>();
      cmd->add_option("--in", *in, "automaton TSV file")->required();
      cmd->callback([&, in]() {
        action = [&, in]() {
          emit(out_path, urn_tsv(automaton_to_urn(parse_automaton_tsv(slurp(*in)))));
          return 0;
        };
      });
    }
    {
      auto* cmd = part_cmd->add_subcommand("to-logic", "model -> its empirical logic");
      auto urn = std::make_shared<std::string>();
      auto aut = std::make_shared<std::string>();
      auto* uo = cmd->add_option("--urn", *urn, "urn TSV file");
      auto* ao = cmd->add_option("--automaton", *aut, "automaton TSV file");
      uo->excludes(ao);
      cmd->callback([&, cmd, urn, aut]() {
        if (urn->empty() && aut->empty())
          throw CLI::ValidationError(cmd->get_name(), "need --urn or --automaton");
        action = [&, urn, aut]() {
          Logic l = urn->empty()
                        ? logic_from_automaton(parse_automaton_tsv(slurp(*aut)))
                        : logic_from_urn(parse_urn_tsv(slurp(*urn)));
          emit(out_path, render_logic(l));
          return 0;
        };
      });
    }

    {
      auto* cmd = part_cmd->add_subcommand("prob", "atom probabilities under weights");
      auto lin = std::make_shared<LogicInput>();
      lin->attach(cmd);
      auto w = std::make_shared<std::string>();
      cmd->add_option("--weights", *w, "comma list of rational weights")->required();
      cmd->callback([&, lin, w]() {
        action = [&, lin, w]() {
          Logic l = lin->get();
          auto ss = enumerate_states(l, threads);
          auto pl = partition_from_states(l, ss.states);
          auto p = state_probabilities(pl, parse_weights(*w));
          std::ostringstream os;
          for (std::size_t a = 0; a < p.size(); ++a)
            os << pl.atom_names[a] << " = " << p[a] << '\n';
          emit(out_path, os.str());
          return 0;
        };
      });
    }
    {
      auto* cmd = part_cmd->add_subcommand("joint", "joint probability of atoms");
      auto lin = std::make_shared<LogicInput>();
      lin->attach(cmd);
      auto w = std::make_shared<std::string>();
      auto atoms = std::make_shared<std::string>();
      cmd->add_option("--weights", *w, "comma list of rational weights")->required();
      cmd->add_option("--atoms", *atoms, "comma list of atom names")->required();
      cmd->callback([&, lin, w, atoms]() {
        action = [&, lin, w, atoms]() {
          Logic l = lin->get();
          auto ss = enumerate_states(l, threads);
          auto pl = partition_from_states(l, ss.states);
          std::vector<std::size_t> idx;
          for (const auto& name : split(*atoms, ','))
            idx.push_back(l.atom_index(name));
          auto p = singlet_joint_probability(pl, parse_weights(*w), idx);
          std::ostringstream os;
          os << p << '\n';
          emit(out_path, os.str());
          return 0;
        };
      });
    }
  }

  // ---- polytope ----
  auto* poly_cmd = app.add_subcommand("polytope", "correlation polytopes");
  {
    auto* verts = poly_cmd->add_subcommand("vertices", "vertices of an n-m scheme");
    auto vs = std::make_shared<std::string>();
    verts->add_option("--scheme", *vs, "scheme, e.g. 2-2")->required();
    verts->callback([&, vs]() {
      action = [&, vs]() {
        auto [nl, nr] = parse_scheme(*vs);
        auto s = two_party_scheme(nl, nr);
        Polytope p;
        p.labels = s.monomial_labels;
        p.vertices = scheme_vertices(s);
        emit(out_path, vertices_csv(p));
        return 0;
      };
    });

    auto* fac = poly_cmd->add_subcommand("facets", "facets of an n-m scheme");
    auto fs = std::make_shared<std::string>();
    fac->add_option("--scheme", *fs, "scheme, e.g. 2-2")->required();
    fac->callback([&, fs]() {
      action = [&, fs]() {
        auto [nl, nr] = parse_scheme(*fs);
        auto s = two_party_scheme(nl, nr);
        auto p = hull(scheme_vertices(s), s.monomial_labels);
        emit(out_path, facets_text(p));
        return 0;
      };
    });

    auto* chk = poly_cmd->add_subcommand("check", "check a point against facets");
    auto ff = std::make_shared<std::string>();
    auto pt = std::make_shared<std::string>();
    chk->add_option("--facets", *ff, "facet file from 'polytope facets'")->required();
    chk->add_option("--point", *pt, "point, e.g. p=9/10,q=7/10,pq=6/10")->required();
    chk->callback([&, ff, pt]() {
      action = [&, ff, pt]() {
        auto p = parse_facets_text(slurp(*ff));
        Point x(p.labels.size());
        std::vector<bool> have(p.labels.size(), false);
        for (const auto& kv : split(*pt, ',')) {
          auto eq = kv.find('=');
          if (eq == std::string::npos)
            throw std::runtime_error("point must be label=value,...");
          auto it = std::find(p.labels.begin(), p.labels.end(), kv.substr(0, eq));
          if (it == p.labels.end())
            throw std::runtime_error("unknown coordinate '" + kv.substr(0, eq) + "'");
          auto i = std::size_t(it - p.labels.begin());
          x[i] = Rational::parse(kv.substr(eq + 1));
          have[i] = true;
        }
        for (std::size_t i = 0; i < have.size(); ++i)
          if (!have[i])
            throw std::runtime_error("missing coordinate '" + p.labels[i] + "'");

        std::ostringstream os;
        bool any_violated = false;
        auto report = [&](const LinearForm& f, bool equality) {
          os << form_str(f, p.labels, equality);
          auto m = f.eval(x);
          bool bad = equality ? !m.is_zero() : m.sign() < 0;
          any_violated = any_violated || bad;
          os << "  : " << (bad ? "violated" : (m.is_zero() ? "tight" : "satisfied"))
             << " (margin " << m << ")\n";
        };
        for (const auto& e : p.equalities) report(e, true);
        for (const auto& f : p.facets) report(f, false);
        emit(out_path, os.str());
        return any_violated ? 2 : 0;
      };
    });

    auto* sp = poly_cmd->add_subcommand("state-polytope", "hull of a logic's states");
    auto lin = std::make_shared<LogicInput>();
    lin->attach(sp);
    sp->callback([&, lin]() {
      action = [&, lin]() {
        Logic l = lin->get();
        auto ss = enumerate_states(l, threads);
        if (ss.states.empty()) {
          std::cerr << "no two-valued state; state polytope is empty\n";
          return 2;
        }
        emit(out_path, facets_text(state_polytope(l, ss)));
        return 0;
      };
    });
  }

  // ---- quantum ----
  auto* q_cmd = app.add_subcommand("quantum", "Clauser-Horne operator bounds");
  {
    auto angles = std::make_shared<AngleSet>();
    auto add_angles = [&](CLI::App* cmd) {
      cmd->add_option("--alpha", angles->alpha, "angle alpha (rad)");
      cmd->add_option("--beta", angles->beta, "angle beta (rad)");
      cmd->add_option("--gamma", angles->gamma, "angle gamma (rad)");
      cmd->add_option("--delta", angles->delta, "angle delta (rad)");
    };

    auto* eig = q_cmd->add_subcommand("eig", "eigenvalues of O22 at given angles");
    add_angles(eig);
    eig->callback([&, angles]() {
      action = [&, angles]() {
        auto numeric = ch_eigenvalues(*angles);
        auto closed = ch_closed_eigenvalues(*angles);
        double resid = 0;
        for (std::size_t i = 0; i < 4; ++i)
          resid = std::max(resid, std::fabs(numeric[i] - closed[i]));
        std::ostringstream os;
        os << "angles " << num(angles->alpha) << ' ' << num(angles->beta) << ' '
           << num(angles->gamma) << ' ' << num(angles->delta) << '\n';
        os << "eigenvalues";
        for (double v : numeric) os << ' ' << num(v);
        os << '\n';
        os << "closed-form residual " << num(resid) << '\n';
        os << "bound " << num(numeric[3]) << '\n';
        emit(out_path, os.str());
        return 0;
      };
    });

    auto* bound = q_cmd->add_subcommand("bound", "maximize the largest eigenvalue");
    auto family = std::make_shared<std::string>("free");
    auto theta = std::make_shared<double>(0.0);
    bound->add_option("--family", *family, "angle family")
        ->check(CLI::IsMember({"free", "theta"}));
    bound->add_option("--theta", *theta, "theta for --family theta");
    bound->callback([&, family, theta]() {
      action = [&, family, theta]() {
        std::ostringstream os;
        if (*family == "theta") {
          os << "theta " << num(*theta) << '\n';
          os << "bound " << num(theta_family_value(*theta)) << '\n';
          os << "closed " << num(theta_family_closed(*theta)) << '\n';
        } else {
          auto r = ch_bound_free(threads);
          os << "bound " << num(r.value) << '\n';
          os << "angles " << num(r.angles.alpha) << ' ' << num(r.angles.beta)
             << ' ' << num(r.angles.gamma) << ' ' << num(r.angles.delta) << '\n';
        }
        emit(out_path, os.str());
        return 0;
      };
    });

    auto* sweep = q_cmd->add_subcommand("sweep", "theta-family curve");
    auto from = std::make_shared<double>(0.0);
    auto to = std::make_shared<double>(3.14159265358979323846);
    auto steps = std::make_shared<unsigned>(64);
    sweep->add_option("--from", *from, "start theta");
    sweep->add_option("--to", *to, "end theta");
    sweep->add_option("--steps", *steps, "sample count");
    sweep->callback([&, from, to, steps]() {
      action = [&, from, to, steps]() {
        std::ostringstream os;
        os << "theta,value,closed\n";
        for (unsigned i = 0; i < *steps; ++i) {
          double t = *from + (*to - *from) * i / (*steps > 1 ? *steps - 1 : 1);
          os << num(t) << ',' << num(theta_family_value(t)) << ','
             << num(theta_family_closed(t)) << '\n';
        }
        emit(out_path, os.str());
        return 0;
      };
    });

    auto* expect = q_cmd->add_subcommand("expect", "Born expectation tr(rho A)");
    auto rho = std::make_shared<std::string>();
    auto obs = std::make_shared<std::string>();
    auto use_ch = std::make_shared<bool>(false);
    expect->add_option("--rho", *rho, "density matrix, comma list, row major")
        ->required();
    auto* oo = expect->add_option("--obs", *obs, "observable, comma list");
    auto* co = expect->add_flag("--ch", *use_ch, "use O22 at the given angles");
    add_angles(expect);
    oo->excludes(co);
    expect->callback([&, expect, rho, obs, use_ch, angles]() {
      if (obs->empty() && !*use_ch)
        throw CLI::ValidationError(expect->get_name(), "need --obs or --ch");
      action = [&, rho, obs, use_ch, angles]() {
        Mat r = parse_matrix(*rho);
        Mat a = *use_ch ? ch_operator(*angles) : parse_matrix(*obs);
        std::ostringstream os;
        os << num(born_expectation(r, a)) << '\n';
        emit(out_path, os.str());
        return 0;
      };
    });
  }

  // Let global flags (--threads, --out, --format) appear after the
  // subcommand too.
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
    for (auto* sub : a->get_subcommands({})) {
      sub->fallthrough(true);
      allow_fallthrough(sub);
    }
  };
  allow_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return action ? action() : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
