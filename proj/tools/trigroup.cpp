#include "trigroup/billiards.hpp"
#include "trigroup/diagram.hpp"
#include "trigroup/json_io.hpp"
#include "trigroup/tits.hpp"
#include "trigroup/wallpaper.hpp"
#include "trigroup/witness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace trigroup;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitNoCertificate = 4;

void write_output(const std::optional<std::string>& json_path, const nlohmann::json& j,
                  const std::string& human) {
  if (json_path) {
    std::ofstream out(*json_path, std::ios::binary);
    out << dump_deterministic(j);
  }
  std::cout << human;
}

TriangleDiagram load_validated_triangle(const std::string& path) {
  CorsonDiagram d = load_diagram_file(path);
  ValidationReport rep = validate(d);
  if (!rep.ok()) {
    std::cerr << rep.to_string();
    throw ParseError(0, 0, "diagram fails validation");
  }
  return TriangleDiagram(std::move(d));
}

TypedWord parse_word_arg(const std::string& s) {
  TypedWord w;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t colon = tok.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("word letters look like type:element, e.g. 1:1,2:1,3:1");
    int type = std::stoi(tok.substr(0, colon));
    long elem = std::stol(tok.substr(colon + 1));
    if (type < 1 || type > 3 || elem < 0)
      throw std::invalid_argument("bad letter '" + tok + "'");
    w.push_back({type, static_cast<std::uint32_t>(elem)});
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return w;
}

Vec2 parse_point_arg(const std::string& s) {
  std::size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("points/directions look like x,y with x = p/q or p/q~r/s "
                                "(a~b means a + b*sqrt(3))");
  auto x = QuadRat::from_string(s.substr(0, comma));
  auto y = QuadRat::from_string(s.substr(comma + 1));
  if (!x || !y) throw std::invalid_argument("bad coordinate in '" + s + "'");
  return {*x, *y};
}

std::array<std::uint32_t, 3> parse_triple_arg(const std::string& s) {
  std::array<std::uint32_t, 3> t{};
  if (std::sscanf(s.c_str(), "%u,%u,%u", &t[0], &t[1], &t[2]) != 3)
    throw std::invalid_argument("triples look like k,l,m e.g. 2,4,4");
  return t;
}

void maybe_svg(const std::optional<std::string>& svg_path, const TrianglePlacement& t,
               const BilliardSequence& b) {
  if (!svg_path) return;
  std::ofstream out(*svg_path, std::ios::binary);
  out << sequence_to_svg(t, b);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis of triangles of groups over finite groups"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "parallelism bound (analyses are deterministic)")
      ->default_val(1);

  std::string input, word_arg, start_arg, dir_arg, triple_arg;
  std::optional<std::string> json_out, svg_out, text_out;
  std::uint32_t verify_depth = 4, lattice_depth = 12, max_reflections = 8;
  std::uint32_t dom_k = 0, dom_l = 0, dom_m = 0;
  bool infinite_order = false;
  std::string mode_arg = "exact";

  auto add_json = [&](CLI::App* cmd) { cmd->add_option("--json", json_out, "write JSON to file"); };

  auto* c_validate = app.add_subcommand("validate", "check diagram invariants");
  c_validate->add_option("diagram", input)->required();
  add_json(c_validate);

  auto* c_angles = app.add_subcommand("angles", "Gersten-Stallings angles of all pairs");
  c_angles->add_option("diagram", input)->required();
  add_json(c_angles);

  auto* c_curv = app.add_subcommand("curvature", "spherical/Euclidean/hyperbolic class");
  c_curv->add_option("diagram", input)->required();
  add_json(c_curv);

  auto* c_branch = app.add_subcommand("branching", "coset complex branching report");
  c_branch->add_option("diagram", input)->required();
  add_json(c_branch);

  auto* c_witness = app.add_subcommand("witness", "free subgroup witness pair");
  c_witness->add_option("diagram", input)->required();
  c_witness->add_option("--verify-depth", verify_depth, "certify all words up to this length")
      ->default_val(4);
  add_json(c_witness);

  auto* c_tits = app.add_subcommand("tits", "large/small classification");
  c_tits->add_option("diagram", input)->required();
  add_json(c_tits);

  auto* c_certify = app.add_subcommand("certify", "billiards nontriviality certificate");
  c_certify->add_option("diagram", input)->required();
  c_certify->add_option("--word", word_arg, "letters type:elem, comma separated")->required();
  c_certify->add_flag("--infinite-order", infinite_order, "look for a periodic certificate");
  c_certify->add_option("--svg", svg_out, "write trajectory SVG");
  add_json(c_certify);

  auto* c_shoot = app.add_subcommand("shoot", "simulate a billiard shot");
  c_shoot->add_option("diagram", input)->required();
  c_shoot->add_option("--start", start_arg, "start point x,y")->required();
  c_shoot->add_option("--dir", dir_arg, "direction x,y")->required();
  c_shoot->add_option("--max-reflections", max_reflections)->default_val(8);
  c_shoot->add_option("--mode", mode_arg, "exact|float")->default_val("exact");
  c_shoot->add_option("--svg", svg_out, "write trajectory SVG");
  add_json(c_shoot);

  auto* c_wall = app.add_subcommand("wallpaper", "exact isometry representation report");
  c_wall->add_option("triple", triple_arg, "k,l,m")->required();
  c_wall->add_option("--lattice-depth", lattice_depth)->default_val(12);
  add_json(c_wall);

  auto* c_export = app.add_subcommand("export-presentation", "colimit presentation text");
  c_export->add_option("diagram", input)->required();
  c_export->add_option("--out", text_out, "write to file instead of stdout");

  auto* c_dom = app.add_subcommand("dominate", "Euclidean triple dominating k,l,m");
  c_dom->add_option("k", dom_k)->required();
  c_dom->add_option("l", dom_l)->required();
  c_dom->add_option("m", dom_m)->required();
  add_json(c_dom);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_validate) {
      CorsonDiagram d = load_diagram_file(input);
      ValidationReport rep = validate(d);
      write_output(json_out, validation_to_json(rep),
                   rep.ok() ? "ok\n" : rep.to_string());
      return rep.ok() ? kExitOk : kExitValidation;
    }
    if (*c_angles) {
      CorsonDiagram d = load_diagram_file(input);
      ValidationReport rep = validate(d);
      if (!rep.ok()) {
        std::cerr << rep.to_string();
        return kExitValidation;
      }
      auto angles = all_angles(d);
      std::ostringstream os;
      for (const auto& [pr, ar] : angles) {
        os << "angle{" << pr.first << "," << pr.second << "} = ";
        if (ar.angle.is_zero())
          os << "0\n";
        else
          os << "2*pi/" << ar.angle.m_hat << "\n";
      }
      write_output(json_out, angles_to_json(angles), os.str());
      return kExitOk;
    }
    if (*c_curv) {
      TriangleDiagram d = load_validated_triangle(input);
      CurvatureClass cc = classify_curvature(d);
      nlohmann::json j = curvature_to_json(cc);
      write_output(json_out, j,
                   j["kind"].get<std::string>() + (cc.degenerate ? " (degenerate)\n" : "\n"));
      return kExitOk;
    }
    if (*c_branch) {
      TriangleDiagram d = load_validated_triangle(input);
      BranchingReport rep = find_branching(d);
      write_output(json_out, branching_to_json(rep),
                   rep.branches ? "branches\n" : "does not branch\n");
      return kExitOk;
    }
    if (*c_witness) {
      TriangleDiagram d = load_validated_triangle(input);
      FreePair p = free_pair(d);
      nlohmann::json j = free_pair_to_json(p);
      std::string human;
      if (p.provenance == FreePair::Case::Index3) {
        VerifyReport vr = verify_free_pair(d, p, verify_depth);
        j["verify"] = nlohmann::json{{"depth", verify_depth},
                                     {"words_checked", vr.words_checked},
                                     {"all_certified", vr.all_certified}};
        if (!vr.all_certified) j["verify"]["failure"] = vr.failure;
        human = "free pair from vertex " + std::to_string(p.edge_a) + "; certified " +
                std::to_string(vr.words_checked) + " words up to length " +
                std::to_string(verify_depth) + "\n";
        if (!vr.all_certified) {
          std::cerr << vr.failure << "\n";
          write_output(json_out, j, human);
          return kExitInternal;
        }
      } else {
        human = "edge group {" + std::to_string(p.ng_a) + "," + std::to_string(p.ng_b) +
                "} not generated by its vertex groups; verdict delegated to the amalgam "
                "decomposition (see tits)\n";
      }
      write_output(json_out, j, human);
      return kExitOk;
    }
    if (*c_tits) {
      TriangleDiagram d = load_validated_triangle(input);
      Verdict v = classify(d);
      write_output(json_out, verdict_to_json(v), verdict_kind_name(v.kind) + "\n");
      return v.kind == Verdict::Kind::Undecided ? kExitUndecided : kExitOk;
    }
    if (*c_certify) {
      TriangleDiagram d = load_validated_triangle(input);
      TypedWord w = parse_word_arg(word_arg);
      std::optional<Certificate> cert =
          infinite_order ? certify_infinite_order(d, w) : certify_nontrivial(d, w);
      if (!cert) {
        std::cerr << (infinite_order ? "NoPeriodicSequenceFound" : "NoSequenceFound")
                  << ": search exhausted; this is not a triviality proof\n";
        return kExitNoCertificate;
      }
      maybe_svg(svg_out, placement_for(d), cert->sequence);
      std::string human = cert->conclusion == Conclusion::Nontrivial
                              ? "nontrivial\n"
                              : "infinite order (period " + std::to_string(*cert->period) +
                                    " reflections)\n";
      write_output(json_out, certificate_to_json(*cert), human);
      return kExitOk;
    }
    if (*c_shoot) {
      TriangleDiagram d = load_validated_triangle(input);
      TrianglePlacement t = placement_for(d);
      ArithmeticMode mode =
          mode_arg == "float" ? ArithmeticMode::Float : ArithmeticMode::Exact;
      BilliardSequence b = shoot(t, parse_point_arg(start_arg), parse_point_arg(dir_arg),
                                 max_reflections, mode);
      maybe_svg(svg_out, t, b);
      Certificate view;
      view.sequence = b;
      view.mode = mode;
      nlohmann::json j = certificate_to_json(view);
      j.erase("word");
      j.erase("conclusion");
      std::ostringstream os;
      os << b.reflections() << " reflections\n";
      write_output(json_out, j, os.str());
      return kExitOk;
    }
    if (*c_wall) {
      auto triple = parse_triple_arg(triple_arg);
      WallpaperRep rep = canonical_rep(triple);
      LatticeReport lat = translation_lattice(rep, lattice_depth);
      IntersectionReport inter = intersection_check(rep);
      nlohmann::json j;
      j["triple"] = rep.triple;
      j["lattice"] = nlohmann::json{{"depth", lattice_depth},
                                    {"rank", lat.rank},
                                    {"translations_found", lat.translations.size()}};
      if (lat.basis) {
        auto vec = [](const Vec2& v) {
          return nlohmann::json::array(
              {rat_to_string(v.x.rational_part()), rat_to_string(v.x.root_part()),
               rat_to_string(v.y.rational_part()), rat_to_string(v.y.root_part())});
        };
        j["lattice"]["basis"] = nlohmann::json::array({vec(lat.basis->first), vec(lat.basis->second)});
      }
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& e : inter.entries)
        checks.push_back(nlohmann::json{{"check", e.description}, {"ok", e.ok}});
      j["intersections"] = checks;
      std::ostringstream os;
      os << "lattice rank " << lat.rank << " at depth " << lattice_depth << "; intersections "
         << (inter.all_ok() ? "ok" : "FAILED") << "\n";
      write_output(json_out, j, os.str());
      return inter.all_ok() && lat.rank == 2 ? kExitOk : kExitInternal;
    }
    if (*c_export) {
      TriangleDiagram d = load_validated_triangle(input);
      std::string text = export_presentation(d);
      if (text_out) {
        std::ofstream out(*text_out, std::ios::binary);
        out << text;
      } else {
        std::cout << text;
      }
      return kExitOk;
    }
    if (*c_dom) {
      auto r = dominate(dom_k, dom_l, dom_m);
      nlohmann::json j{{"input", {dom_k, dom_l, dom_m}}, {"dominating", r}};
      std::ostringstream os;
      os << "(" << r[0] << "," << r[1] << "," << r[2] << ")\n";
      write_output(json_out, j, os.str());
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const GroupError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const LetterInBaseImage& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
