// Exercises the installed binary end to end: wiring, exit codes, and the
// determinism contract (same seed -> byte-identical files, any --jobs).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "nareor/corpus_io.hpp"
#include "nareor/rng.hpp"
#include "testutil.hpp"

using namespace nareor;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return NAREOR_CLI_PATH; }

fs::path work_dir() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / "nareor_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " >" +
                          (work_dir() / "stdout.txt").string() + " 2>" +
                          (work_dir() / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Fixture {
  fs::path stories, coref, gold;
};

Fixture make_fixture() {
  Fixture f;
  auto dir = work_dir();
  f.stories = dir / "stories.jsonl";
  f.coref = dir / "coref.jsonl";
  f.gold = dir / "gold.jsonl";

  Rng rng(1001);
  std::vector<Story> stories;
  std::vector<CorefDoc> corefs;
  std::vector<SupervisedPair> gold;
  for (int i = 0; i < 12; ++i) {
    Story s = testutil::random_story("cli" + std::to_string(i), 5, rng);
    corefs.push_back(testutil::synthetic_coref(s, rng));
    stories.push_back(s);

    SupervisedPair p;
    p.story = s;
    p.target_order = sample_target_order(5, rng);
    Story ref;
    ref.id = s.id + "::ref1";
    ref.sentences = apply_order(p.target_order, s.sentences);
    p.references.push_back(ref);
    gold.push_back(p);
  }
  write_stories_jsonl(f.stories.string(), stories);
  write_coref_jsonl(f.coref.string(), corefs);
  write_pairs_jsonl(f.gold.string(), gold);
  return f;
}

}  // namespace

TEST_CASE("cli pipeline wiring and determinism") {
  Fixture f = make_fixture();
  auto dir = work_dir();

  // sample-orders: reruns and different job counts agree byte for byte.
  auto pairs1 = (dir / "pairs1.jsonl").string();
  auto pairs2 = (dir / "pairs2.jsonl").string();
  auto pairs8 = (dir / "pairs8.jsonl").string();
  REQUIRE(run_cli("sample-orders --corpus " + f.stories.string() + " --seed 7 --out " + pairs1) ==
          0);
  REQUIRE(run_cli("sample-orders --corpus " + f.stories.string() + " --seed 7 --out " + pairs2) ==
          0);
  REQUIRE(run_cli("sample-orders --corpus " + f.stories.string() + " --seed 7 --jobs 8 --out " +
                  pairs8) == 0);
  CHECK(slurp(pairs1) == slurp(pairs2));
  CHECK(slurp(pairs1) == slurp(pairs8));
  CHECK(slurp(dir / "stdout.txt").find("\"command\":\"sample-orders\"") != std::string::npos);

  // A different seed changes the output.
  auto pairs_other = (dir / "pairs_other.jsonl").string();
  REQUIRE(run_cli("sample-orders --corpus " + f.stories.string() + " --seed 8 --out " +
                  pairs_other) == 0);
  CHECK(slurp(pairs1) != slurp(pairs_other));

  // make-train wiring: denoise stage 1 emits one example per story.
  auto d1 = (dir / "d1.jsonl").string();
  REQUIRE(run_cli("make-train --method denoise --stage 1 --corpus " + f.stories.string() +
                  " --seed 7 --out " + d1) == 0);
  auto examples = read_training_jsonl(d1);
  CHECK(examples.size() == 12);
  for (const auto& ex : examples) {
    CHECK(ex.method == Method::denoise);
    CHECK(ex.stage == 1);
  }

  // reorder stage 1 with jobs variation.
  auto r1a = (dir / "r1a.jsonl").string();
  auto r1b = (dir / "r1b.jsonl").string();
  REQUIRE(run_cli("make-train --method reorder --stage 1 --corpus " + pairs1 + " --coref " +
                  f.coref.string() + " --seed 9 --out " + r1a) == 0);
  REQUIRE(run_cli("make-train --method reorder --stage 1 --corpus " + pairs1 + " --coref " +
                  f.coref.string() + " --seed 9 --jobs 8 --out " + r1b) == 0);
  CHECK(slurp(r1a) == slurp(r1b));

  // score writes per-example rows for every prediction.
  auto preds = (dir / "preds.jsonl").string();
  {
    std::vector<Prediction> echo;
    for (const auto& p : read_pairs_jsonl(f.gold.string()))
      echo.push_back({p.story.id, story_text(p.references[0])});
    write_predictions_jsonl(preds, echo);
  }
  auto scores = (dir / "scores.jsonl").string();
  REQUIRE(run_cli("score --predictions " + preds + " --gold " + f.gold.string() + " --out " +
                  scores) == 0);
  std::string out = slurp(dir / "stdout.txt");
  CHECK(out.find("\"aggregate\"") != std::string::npos);
  CHECK(out.find("\"bleu\":1.0") != std::string::npos);

  // Inputs are never mutated.
  const std::string before = slurp(f.stories) + slurp(f.coref) + slurp(f.gold);
  REQUIRE(run_cli("challenge --corpus " + f.gold.string() + " --seed 4 --out-control " +
                  (dir / "ctrl.jsonl").string() + " --out-challenge " +
                  (dir / "chal.jsonl").string()) == 0);
  CHECK(before == slurp(f.stories) + slurp(f.coref) + slurp(f.gold));
}

TEST_CASE("cli exit codes") {
  Fixture f = make_fixture();
  auto dir = work_dir();

  CHECK(run_cli("no-such-command") == 1);
  CHECK(run_cli("sample-orders --corpus " + f.stories.string() + " --seed 1 --out x.jsonl" +
                " --bogus-flag") == 1);
  CHECK(run_cli("sample-orders --corpus " + f.stories.string() + " --out x.jsonl") == 1);

  // Data errors: missing file, missing sidecar.
  CHECK(run_cli("score --predictions " + (dir / "absent.jsonl").string() + " --gold " +
                f.gold.string() + " --out " + (dir / "x.jsonl").string()) == 2);
  auto empty_coref = (dir / "empty_coref.jsonl").string();
  {
    std::ofstream touch(empty_coref);
  }
  CHECK(run_cli("make-train --method reorder --stage 1 --corpus " + f.gold.string() +
                " --coref " + empty_coref + " --seed 1 --out " + (dir / "x.jsonl").string()) ==
        2);
  std::string err = slurp(dir / "stderr.txt");
  CHECK(err.find("no coreference sidecar") != std::string::npos);
}
