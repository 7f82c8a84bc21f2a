// writes the fixture corpus as JSON
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ftinv/fixtures.hpp"

using namespace ftinv;
namespace fx = ftinv::fixtures;

int main(int argc, char** argv) {
  std::filesystem::path root = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(root);
  auto put = [&](const std::string& name, const nlohmann::json& j) {
    std::ofstream(root / (name + ".json")) << j.dump(1) << "\n";
  };
  auto link = [&](const std::string& name, const FramedLink& L) { put(name, link_to_json(L)); };
  link("s3", FramedLink{});
  link("unknot", fx::unknot(0));
  link("s1xs2", fx::unknot(0));
  link("trefoil_R", fx::trefoil(1, 0));
  link("trefoil_L", fx::trefoil(-1, 0));
  link("figure8", fx::figure_eight(0));
  link("figure8_1", fx::figure_eight(1));
  link("hopf", fx::hopf(0, 0));
  link("borromean", fx::borromean());
  link("t3", fx::borromean());
  link("lens_2_1", fx::unknot(2));
  link("lens_3_1", fx::unknot(3));
  link("poincare", fx::trefoil(1, 1));
  link("delta", fx::trefoil(1, 1, Role::surgery));
  link("borromean_pair", fx::borromean_pair());
  for (int n = 1; n <= 3; ++n) link("lambda_" + std::to_string(2 * n), fx::lambda_2n_link(n));
  link("slide_pair_L1", fx::slide_pair_L1());
  link("slide_pair_L2", fx::slide_pair_L2());
  link("e8_chain", fx::e8_chain());
  put("e8_spin", spin_to_json(fx::spin(fx::e8_chain(), {})));
  put("trefoil_spin", spin_to_json(fx::spin(fx::trefoil(1, 1), {0})));
  put("borromean_spin", spin_to_json(fx::spin(fx::borromean({1, 1, 1}, Role::surgery), {})));
  put("seifert_one_pair", seifert_to_json(fx::one_pair()));
  for (int n = 1; n <= 3; ++n) put("seifert_lambda_" + std::to_string(2 * n), seifert_to_json(lambda_2n_seifert(n)));
  put("seifert_circular_4", seifert_to_json(fx::circular_seifert()));
  for (int j = 1; j <= 4; ++j) put("seifert_trefoil_power_" + std::to_string(j), seifert_to_json(trefoil_power_seifert(j)));
  for (auto& c : fx::bracket_cases()) link("bracket_" + c.name, c.M.link);
  for (auto& c : fx::spin_vanishing_cases()) link("spin_" + c.name, c.M.link);
  std::cout << "fixtures written to " << root << "\n";
}
