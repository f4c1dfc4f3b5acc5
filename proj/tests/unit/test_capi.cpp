#include <gtest/gtest.h>

#include <string>

#include "takiff/takiff.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  takiff_string_free(s);
  return out;
}

const char* kQ2 = R"({"ring":[{"name":"x","size":2,"role":"state"}],
  "terms":[{"coeff":"1/2","exps":{"x.0":2}},{"coeff":"1/2","exps":{"x.1":2}}]})";

const char* kRadial2 = R"({"ring":[{"name":"f0","size":2,"role":"state"}],
  "codomain":[{"name":"f0","size":2}],
  "components":[[{"coeff":"1","exps":{"f0.0":1}}],[{"coeff":"1","exps":{"f0.1":1}}]]})";

const char* kRotation2 = R"({"ring":[{"name":"f0","size":2,"role":"state"}],
  "codomain":[{"name":"f0","size":2}],
  "components":[[{"coeff":"-1","exps":{"f0.1":1}}],[{"coeff":"1","exps":{"f0.0":1}}]]})";

}  // namespace

TEST(CApi, AlgebraLifecycle) {
  takiff_rep* rep = nullptr;
  ASSERT_EQ(takiff_rep_standard("sl2", 0, 0, 0, &rep), TAKIFF_OK);
  takiff_algebra* g = nullptr;
  ASSERT_EQ(takiff_rep_algebra(rep, &g), TAKIFF_OK);
  EXPECT_EQ(takiff_algebra_dim(g), 3u);
  takiff_algebra* g2 = nullptr;
  ASSERT_EQ(takiff_build_takiff(g, 2, &g2), TAKIFF_OK);
  EXPECT_EQ(takiff_algebra_dim(g2), 9u);
  char* flip = nullptr;
  ASSERT_EQ(takiff_verify_flip(g, 2, &flip), TAKIFF_OK);
  EXPECT_NE(take(flip).find("\"pass\": true"), std::string::npos);

  char* json = nullptr;
  ASSERT_EQ(takiff_algebra_to_json(g2, &json), TAKIFF_OK);
  takiff_algebra* back = nullptr;
  EXPECT_EQ(takiff_algebra_from_json(json, &back), TAKIFF_OK);
  takiff_string_free(json);
  EXPECT_EQ(takiff_algebra_dim(back), 9u);
  takiff_algebra_free(back);
  takiff_algebra_free(g2);
  takiff_algebra_free(g);
  takiff_rep_free(rep);
}

TEST(CApi, ErrorCodes) {
  takiff_algebra* g = nullptr;
  EXPECT_EQ(takiff_algebra_from_json("{", &g), TAKIFF_ERR_PARSE);
  EXPECT_NE(std::string(takiff_last_error()), "");
  EXPECT_EQ(takiff_algebra_from_json(R"({"dim":2,"c":[[["0","1"],["0","0"]],[["1","0"],["0","0"]]]})", &g),
            TAKIFF_ERR_VALIDATION);
  EXPECT_EQ(takiff_algebra_from_json(R"({"dim":2,"c":[]})", &g), TAKIFF_ERR_STRUCTURE);
  EXPECT_EQ(takiff_algebra_from_json(nullptr, &g), TAKIFF_ERR_ARGUMENT);
  EXPECT_EQ(g, nullptr);
  takiff_rep* rep = nullptr;
  EXPECT_EQ(takiff_rep_standard("e8", 0, 0, 0, &rep), TAKIFF_ERR_VALIDATION);
  EXPECT_STREQ(takiff_status_name(TAKIFF_ERR_REFUSED), "refused");
}

TEST(CApi, InvariantsAndLifts) {
  takiff_rep* rep = nullptr;
  ASSERT_EQ(takiff_rep_standard("so", 2, 0, 0, &rep), TAKIFF_OK);
  takiff_poly* q = nullptr;
  ASSERT_EQ(takiff_poly_from_json(kQ2, &q), TAKIFF_OK);
  int inv = 0;
  char* report = nullptr;
  ASSERT_EQ(takiff_check_invariant(rep, q, &inv, &report), TAKIFF_OK);
  takiff_string_free(report);
  EXPECT_EQ(inv, 1);
  char* lifts = nullptr;
  ASSERT_EQ(takiff_lift_invariant(rep, 1, q, 0, &lifts), TAKIFF_OK);
  EXPECT_NE(take(lifts).find("f1.0"), std::string::npos);
  char* text = nullptr;
  ASSERT_EQ(takiff_poly_to_string(q, &text), TAKIFF_OK);
  EXPECT_EQ(take(text), "1/2*x.0^2 + 1/2*x.1^2");
  takiff_poly_free(q);
  takiff_rep_free(rep);
}

TEST(CApi, DecomposeVerifyAndRefuse) {
  takiff_rep* rep = nullptr;
  ASSERT_EQ(takiff_rep_standard("so", 2, 0, 0, &rep), TAKIFF_OK);

  takiff_field* rot = nullptr;
  ASSERT_EQ(takiff_field_from_json(kRotation2, &rot), TAKIFF_OK);
  char* dec = nullptr;
  char* report = nullptr;
  ASSERT_EQ(takiff_decompose(rep, 0, rot, nullptr, &dec, &report), TAKIFF_OK) << takiff_last_error();
  takiff_string_free(report);
  int ok = 0;
  char* vreport = nullptr;
  ASSERT_EQ(takiff_verify(rot, dec, &ok, &vreport), TAKIFF_OK);
  takiff_string_free(vreport);
  takiff_string_free(dec);
  EXPECT_EQ(ok, 1);

  takiff_field* radial = nullptr;
  ASSERT_EQ(takiff_field_from_json(kRadial2, &radial), TAKIFF_OK);
  EXPECT_EQ(takiff_decompose(rep, 0, radial, nullptr, &dec, &report), TAKIFF_ERR_REFUSED);
  EXPECT_EQ(dec, nullptr);
  const auto r = take(report);
  EXPECT_NE(r.find("\"witness\""), std::string::npos);
  EXPECT_NE(r.find("f0.0"), std::string::npos);

  char* tan = nullptr;
  ASSERT_EQ(takiff_tangency(rep, radial, R"([{"state":["1","0"]}])", &tan), TAKIFF_OK);
  EXPECT_NE(take(tan).find("\"member\": false"), std::string::npos);

  takiff_field_free(radial);
  takiff_field_free(rot);
  takiff_rep_free(rep);
}

TEST(CApi, GenerateIsDeterministic) {
  const char* cfg = R"({"seed":1,"kind":"so","n":3,"level":1,"max_degree":2})";
  char* a = nullptr;
  char* b = nullptr;
  ASSERT_EQ(takiff_generate(cfg, &a), TAKIFF_OK);
  ASSERT_EQ(takiff_generate(cfg, &b), TAKIFF_OK);
  EXPECT_EQ(take(a), take(b));
  EXPECT_EQ(takiff_generate(R"({"kind":"nope"})", &a), TAKIFF_ERR_VALIDATION);
}

TEST(CApi, SuitesAndRendering) {
  char* out = nullptr;
  int pass = 0;
  ASSERT_EQ(takiff_run_suite("flip", 1, 1, &out, &pass), TAKIFF_OK);
  EXPECT_EQ(pass, 1);
  EXPECT_NE(take(out).find("passed"), std::string::npos);
  EXPECT_EQ(takiff_run_suite("nope", 1, 0, &out, &pass), TAKIFF_ERR_VALIDATION);
  char* names = nullptr;
  ASSERT_EQ(takiff_suite_names(&names), TAKIFF_OK);
  EXPECT_NE(take(names).find("roundtrip"), std::string::npos);
  char* text = nullptr;
  ASSERT_EQ(takiff_render_human(kRotation2, &text), TAKIFF_OK);
  EXPECT_EQ(take(text), "d/df0.0: -f0.1\nd/df0.1: f0.0\n");
}
