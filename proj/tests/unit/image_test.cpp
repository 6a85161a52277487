// Copyright 2026 The StormSift Authors
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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/image/augment.hpp"
#include "stormsift/image/raster.hpp"
#include "stormsift/image/scorer.hpp"
#include "stormsift/image/toy_model.hpp"
#include "support/image_generator.hpp"

using namespace stormsift;
using namespace stormsift::image;

namespace {

RgbImage gradient(int w, int h) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto* p = img.at(x, y);
      p[0] = static_cast<std::uint8_t>(x * 17);
      p[1] = static_cast<std::uint8_t>(y * 29);
      p[2] = static_cast<std::uint8_t>((x + y) * 7);
    }
  }
  return img;
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "stormsift_image_test";
  std::filesystem::create_directories(dir);
  return dir;
}

AugmentationOp op(AugmentationKind k, double f = 1.0) { return {k, f}; }

class FixedScorer : public ImageScorer {
 public:
  ImageScores score(const core::MediaRef& media) const override {
    ImageScores s;
    s.p_related = std::stod(media.path);
    if (s.p_related >= 0.5) s.tags = TagProbabilities{0.1, 0.2, 0.3};
    return s;
  }
  double calibration_min() const override { return std::log(0.01); }
  double calibration_max() const override { return 0.0; }
  std::string name() const override { return "fixed"; }
};

}  // namespace

TEST_CASE("raster round trips and decoding") {
  const auto img = gradient(7, 5);
  const auto dir = temp_dir();
  save_png((dir / "g.png").string(), img);
  save_ppm((dir / "g.ppm").string(), img);
  CHECK(load_image((dir / "g.png").string()) == img);
  CHECK(load_image((dir / "g.ppm").string()) == img);

  const auto jpg = load_image(std::string(STORMSIFT_FIXTURE_DIR) + "/two_tone.jpg");
  REQUIRE(jpg.width == 8);
  REQUIRE(jpg.height == 6);
  CHECK(jpg.at(0, 0)[2] > 180);
  CHECK(jpg.at(0, 0)[0] < 60);
  CHECK(jpg.at(7, 5)[0] > 160);
  CHECK(jpg.at(7, 5)[2] < 70);

  write_file((dir / "junk.png").string(), "not an image at all", "test");
  CHECK_THROWS_AS(load_image((dir / "junk.png").string()), Error);
  CHECK_THROWS_AS(load_image((dir / "missing.png").string()), Error);
  write_file((dir / "bad.jpg").string(), std::string("\xFF\xD8\xFF\xE0garbage", 11), "test");
  CHECK_THROWS_AS(load_image((dir / "bad.jpg").string()), Error);
}

TEST_CASE("augmentation ops") {
  const auto img = gradient(5, 3);
  const auto r90 = apply_op(img, op(AugmentationKind::Rotate90));
  CHECK(r90.width == 3);
  CHECK(r90.height == 5);
  CHECK(apply_op(r90, op(AugmentationKind::Rotate90)) == apply_op(img, op(AugmentationKind::Rotate180)));
  CHECK(apply_op(apply_op(img, op(AugmentationKind::Rotate90)), op(AugmentationKind::Rotate270)) == img);
  CHECK(apply_op(apply_op(img, op(AugmentationKind::HorizontalFlip)), op(AugmentationKind::HorizontalFlip)) == img);
  // The top-left pixel of a clockwise rotation comes from the bottom-left.
  CHECK(std::equal(r90.at(0, 0), r90.at(0, 0) + 3, img.at(0, 2)));

  const auto square = gradient(6, 6);
  for (auto k : {AugmentationKind::Rotate90, AugmentationKind::Rotate180, AugmentationKind::Rotate270}) {
    const auto out = apply_op(square, op(k));
    CHECK(out.width == 6);
    CHECK(out.height == 6);
  }
  const auto small = apply_op(img, op(AugmentationKind::Scale, 0.8));
  CHECK(small.width == 4);
  CHECK(small.height == 2);
  const auto big = apply_op(img, op(AugmentationKind::Scale, 1.2));
  CHECK(big.width == 6);
  CHECK(big.height == 4);
  const auto tiny = apply_op(RgbImage(1, 1), op(AugmentationKind::Scale, 0.8));
  CHECK(tiny.width == 1);

  CHECK(all_augmentation_ops().size() == 6);
  for (const auto& o : all_augmentation_ops()) CHECK(parse_op(op_name(o)) == o);
  CHECK_THROWS_AS(parse_op("shear"), Error);
}

TEST_CASE("augment_dataset balances classes with provenance") {
  std::vector<LabeledImage> images;
  const RgbImage pixel = gradient(2, 2);
  for (int i = 0; i < 817 + 6081; ++i) {
    LabeledImage li;
    li.id = "m" + std::to_string(i);
    li.image = pixel;
    li.label.subject_id = li.id;
    li.label.related = i < 817;
    if (li.label.related) li.label.tags = {core::Tag::Flooding};
    images.push_back(std::move(li));
  }
  const auto out = augment_dataset(images, all_augmentation_ops());
  std::size_t related = 0;
  for (const auto& li : out) related += li.label.related;
  const std::size_t unrelated = out.size() - related;
  CHECK(unrelated == 6081);
  CHECK(std::abs(static_cast<double>(related) - static_cast<double>(unrelated)) <= 0.05 * 6081);

  std::map<std::string, const LabeledImage*> originals;
  for (std::size_t i = 0; i < images.size(); ++i) {
    REQUIRE(out[i].id == images[i].id);
    REQUIRE_FALSE(out[i].is_synthetic());
    originals[out[i].id] = &out[i];
  }
  bool chained = false;
  for (std::size_t i = images.size(); i < out.size(); ++i) {
    const auto& li = out[i];
    REQUIRE(li.is_synthetic());
    REQUIRE(li.label.related);
    REQUIRE(li.label.tags == std::vector<core::Tag>{core::Tag::Flooding});
    const auto it = originals.find(li.source_id);
    REQUIRE(it != originals.end());
    REQUIRE(it->second->label.related);
    chained = chained || li.ops.size() > 1;
    RgbImage replay = it->second->image;
    for (const auto& o : li.ops) replay = apply_op(replay, o);
    REQUIRE(replay == li.image);
  }
  CHECK(chained);

  const std::vector<AugmentationOp> none;
  CHECK_THROWS_AS(augment_dataset(images, none), Error);
}

TEST_CASE("precomputed scores") {
  std::istringstream ok(
      "media_id,p_related,p_flood,p_wind,p_destruction\n"
      "m1,0.9,0.8,0.1,0.3\n"
      "m2,0.2,,,\n"
      "m3,0.1,0.5,0.5,0.5\n"
      "m4,0.05\n");
  const auto table = parse_precomputed_scores(ok);
  REQUIRE(table.size() == 4);
  CHECK(table.at("m1").p_related == 0.9);
  CHECK(table.at("m1").tags == TagProbabilities{0.8, 0.1, 0.3});
  CHECK_FALSE(table.at("m2").tags.has_value());
  CHECK_FALSE(table.at("m3").tags.has_value());

  const auto line_of = [](const std::string& csv) -> std::size_t {
    std::istringstream in(csv);
    try {
      parse_precomputed_scores(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("m1,0.9,0.8,0.1,0.3\nm2,1.5,0.1,0.1,0.1\n") == 2);
  CHECK(line_of("m1,0.9,0.8,0.1,0.3\nm1,0.4,,,\n") == 2);
  CHECK(line_of("m1,0.9,,,\n") == 1);
  CHECK(line_of("m1,0.9,0.8,-0.1,0.3\n") == 1);
  CHECK(line_of("m1,abc,0.8,0.1,0.3\n") == 1);
  CHECK(line_of("m1,0.9,0.8\n") == 1);

  std::ostringstream out;
  write_precomputed_scores(out, table);
  std::istringstream back(out.str());
  CHECK(parse_precomputed_scores(back) == table);

  const PrecomputedScorer scorer(table);
  CHECK(scorer.calibration_max() == doctest::Approx(std::log(0.9)));
  CHECK(scorer.calibration_min() == doctest::Approx(std::log(0.05)));
  CHECK_THROWS_AS(scorer.score({"zzz", ""}), Error);
}

TEST_CASE("image_score contract") {
  const FixedScorer scorer;
  CHECK(image_score({}, scorer).score == 0.0);
  CHECK_FALSE(image_score({}, scorer).tags.has_value());

  const std::vector<core::MediaRef> top = {{"a", "1.0"}};
  CHECK(image_score(top, scorer).score == 100.0);
  const std::vector<core::MediaRef> bottom = {{"a", "0.01"}};
  CHECK(image_score(bottom, scorer).score == doctest::Approx(0.0));

  const std::vector<core::MediaRef> several = {{"a", "0.2"}, {"b", "0.7"}, {"c", "0.4"}};
  const auto r = image_score(several, scorer);
  CHECK(*r.media_id == "b");
  CHECK(r.tags.has_value());
  CHECK(r.score == doctest::Approx(rescale_probability(0.7, std::log(0.01), 0.0)));

  double last = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double s = rescale_probability(i / 100.0, std::log(0.01), 0.0);
    CHECK(s >= last);
    CHECK(s >= 0.0);
    CHECK(s <= 100.0);
    last = s;
  }
  CHECK(rescale_probability(0.3, -1.0, -1.0) == 50.0);
}

TEST_CASE("toy classifier") {
  const auto images = testing::scene_dataset(200, 5);
  const auto eval = evaluate_toy_classifier(images, 6);
  CHECK(eval.test_size + eval.train_size == 200);
  CHECK(eval.accuracy >= 0.9);

  const auto& m = eval.model;
  for (const auto& li : images) {
    const auto s = score_image(m, li.image);
    REQUIRE(s.p_related >= 0.0);
    REQUIRE(s.p_related <= 1.0);
    REQUIRE(s.tags.has_value() == (s.p_related >= m.gate));
    REQUIRE(score_image(m, li.image) == s);
  }

  std::vector<LabeledImage> same;
  Rng rng(3);
  const auto scene = testing::draw_scene(testing::Scene::Field, rng);
  for (int i = 0; i < 40; ++i) {
    LabeledImage li;
    li.id = std::to_string(i);
    li.image = scene;
    li.label.related = i % 4 == 0;
    same.push_back(li);
  }
  const auto prior = train_toy_classifier(same, 1);
  CHECK(score_image(prior, scene).p_related == doctest::Approx(0.25).epsilon(1e-4));

  CHECK_THROWS_AS(train_toy_classifier(std::vector<LabeledImage>{}, 1), Error);
  for (auto& li : same) li.label.related = false;
  CHECK_THROWS_AS(train_toy_classifier(same, 1), Error);

  std::stringstream io;
  save_toy_model(io, m);
  const auto back = load_toy_model(io);
  for (const auto& li : images) REQUIRE(score_image(back, li.image) == score_image(m, li.image));

  const auto dir = temp_dir();
  save_png((dir / "scene.png").string(), images[0].image);
  const ToyModelScorer scorer(m, dir.string());
  CHECK(scorer.score({"x", "scene.png"}) == score_image(m, images[0].image));
  CHECK_THROWS_AS(scorer.score({"x", ""}), Error);
}
