#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <numeric>

#include "chunkpunct/codec.hpp"
#include "chunkpunct/pipeline.hpp"
#include "chunkpunct/report_io.hpp"
#include "test_support.hpp"

namespace chunkpunct {
namespace {

RestorerSpec oracle_spec() { return RestorerSpec{}; }

RestorerSpec noise_spec(std::size_t width, double p, std::uint64_t seed = 0) {
  RestorerSpec spec;
  spec.kind = RestorerSpec::Kind::BoundaryNoise;
  spec.boundary_width = width;
  spec.probability = p;
  spec.seed = seed;
  return spec;
}

TEST(RestoreDocument, SampleWithOracle) {
  const auto ref = testing::sample_reference();
  const auto words = words_of(ref);
  ModelFactory models(oracle_spec());
  PipelineConfig cfg{{10, 5}, {3}, 1};
  const auto out = restore_document(words, *models.for_document(&ref, cfg.chunk), cfg);
  EXPECT_EQ(render_plain(out), testing::kSampleOriginal);
}

TEST(RestoreDocument, MatchesManualSplitRestoreMerge) {
  testing::Random rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ref = rng.sequence(rng.uniform(1, 150));
    const auto cfg_chunk = rng.chunk_config(30);
    const MergeConfig mcfg{rng.uniform(0, cfg_chunk.overlap)};
    ModelFactory models(noise_spec(rng.uniform(0, 4), 0.5, trial));
    const auto model = models.for_document(&ref, cfg_chunk);
    const auto words = words_of(ref);

    std::vector<ChunkResult> manual;
    for (const auto& c : split(words, cfg_chunk)) manual.push_back({c, model->restore(c)});
    const auto expected = merge(manual, cfg_chunk, mcfg);

    PipelineConfig cfg{cfg_chunk, mcfg, rng.uniform(1, 6)};
    EXPECT_EQ(restore_document(words, *model, cfg), expected);
  }
}

TEST(RestoreDocument, WorkerCountDoesNotChangeOutput) {
  testing::Random rng(8);
  const auto ref = rng.sequence(5000);
  const auto words = words_of(ref);
  ModelFactory models(noise_spec(3, 0.7, 99));
  PipelineConfig cfg{{30, 15}, {7}, 1};
  const auto model = models.for_document(&ref, cfg.chunk);
  const auto one = restore_document(words, *model, cfg);
  for (std::size_t w : {2u, 4u, 8u}) {
    cfg.workers = w;
    EXPECT_EQ(restore_document(words, *model, cfg), one) << w << " workers";
  }
}

TEST(RestoreDocument, EmptyDocument) {
  ModelFactory models(oracle_spec());
  const LabeledSequence ref;
  PipelineConfig cfg;
  EXPECT_TRUE(restore_document({}, *models.for_document(&ref, cfg.chunk), cfg).empty());
}

class FailingRestorer : public Restorer {
 public:
  explicit FailingRestorer(std::size_t bad) : bad_(bad) {}
  LabeledSequence restore(const Chunk& c) const override {
    if (c.index == bad_) throw ModelError("chunk " + std::to_string(c.index) + " failed");
    LabeledSequence out;
    for (const auto& w : c.words) out.push_back({w, CaseLabel::Lower, PunctLabel::None});
    return out;
  }

 private:
  std::size_t bad_;
};

class ShortRestorer : public Restorer {
 public:
  LabeledSequence restore(const Chunk& c) const override {
    LabeledSequence out;
    for (std::size_t i = 0; i + 1 < c.words.size(); ++i) out.push_back({c.words[i]});
    return out;
  }
};

TEST(RestoreDocument, ModelErrorsPropagate) {
  const auto words = testing::Random(9).words(1000);
  for (std::size_t workers : {1u, 4u}) {
    PipelineConfig cfg{{30, 15}, {7}, workers};
    EXPECT_THROW(restore_document(words, FailingRestorer(20), cfg), ModelError);
    EXPECT_THROW(restore_document(words, ShortRestorer(), cfg), LengthMismatch);
  }
}

TEST(RestoreDocument, ConfigValidation) {
  const auto words = testing::sample_words();
  FailingRestorer model(1000);
  EXPECT_THROW(restore_document(words, model, PipelineConfig{{10, 5}, {6}, 1}), ConfigError);
  EXPECT_THROW(restore_document(words, model, PipelineConfig{{10, 10}, {0}, 1}), ConfigError);
  EXPECT_THROW(restore_document(words, model, PipelineConfig{{10, 5}, {2}, 0}), ConfigError);
  EXPECT_NO_THROW(restore_document(words, model, PipelineConfig{{10, 5}, {5}, 1}));
}

TEST(RestoreChunks, ResultsInIndexOrder) {
  const auto words = testing::Random(10).words(900);
  const auto chunks = split(words, ChunkConfig{30, 15});
  const auto results = restore_chunks(chunks, FailingRestorer(100000), 8);
  ASSERT_EQ(results.size(), chunks.size());
  for (std::size_t i = 0; i < results.size(); ++i) EXPECT_EQ(results[i].chunk, chunks[i]);
}

TEST(ModelFactory, Specs) {
  EXPECT_EQ(RestorerSpec::parse_kind("oracle"), RestorerSpec::Kind::Oracle);
  EXPECT_EQ(RestorerSpec::parse_kind("noise"), RestorerSpec::Kind::BoundaryNoise);
  EXPECT_EQ(RestorerSpec::parse_kind("baseline"), RestorerSpec::Kind::Baseline);
  EXPECT_EQ(RestorerSpec::parse_kind("external"), RestorerSpec::Kind::External);
  EXPECT_THROW(RestorerSpec::parse_kind("bert"), ConfigError);
  EXPECT_THROW(ModelFactory(noise_spec(3, 1.5)), ConfigError);
  RestorerSpec baseline;
  baseline.kind = RestorerSpec::Kind::Baseline;
  EXPECT_THROW(ModelFactory{baseline}, ConfigError);
  baseline.table_path = "/nonexistent/table.tsv";
  EXPECT_THROW(ModelFactory{baseline}, IoError);
  baseline.table = std::make_shared<const BaselineTable>();
  ModelFactory models(baseline);
  EXPECT_EQ(models.for_document(nullptr, ChunkConfig{}), models.for_document(nullptr, ChunkConfig{}));
  ModelFactory oracle(oracle_spec());
  EXPECT_THROW(oracle.for_document(nullptr, ChunkConfig{}), ConfigError);
}

TEST(Sweep, OracleIsPerfectForEveryCut) {
  testing::Random rng(11);
  std::vector<LabeledSequence> docs;
  for (int d = 0; d < 10; ++d) docs.push_back(rng.sequence(rng.uniform(1, 120)));
  ModelFactory models(oracle_spec());
  std::vector<std::size_t> cuts(16);
  std::iota(cuts.begin(), cuts.end(), 0);
  const auto report = sweep(docs, models, ChunkConfig{30, 15}, cuts, 2);
  ASSERT_EQ(report.size(), 16u);
  for (const auto& e : report) {
    EXPECT_EQ(e.confusion, report.front().confusion);
    for (Slot s : kSlots) {
      if (e.report[s].support) {
        EXPECT_DOUBLE_EQ(e.report[s].f1, 1.0);
      }
    }
  }
}

TEST(Sweep, BoundaryNoiseMatchesAnalyticExpectation) {
  testing::Random rng(12);
  std::vector<LabeledSequence> docs;
  for (int d = 0; d < 8; ++d) docs.push_back(rng.sequence(rng.uniform(20, 300)));
  const ChunkConfig cfg{30, 15};
  const std::size_t b = 3;
  ModelFactory models(noise_spec(b, 1.0));
  std::vector<std::size_t> cuts{15, 0, 7, 3, 12, 7};
  const auto report = sweep(docs, models, cfg, cuts);
  ASSERT_EQ(report.size(), 5u);
  const std::vector<std::size_t> sorted{0, 3, 7, 12, 15};
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const std::size_t m = sorted[k];
    EXPECT_EQ(report[k].min_words_cut, m);
    testing::BruteForceCounts bf;
    for (const auto& ref : docs) {
      const std::size_t n = ref.size();
      LabeledSequence hyp = ref;
      for (std::size_t g = 0; g < n; ++g) {
        const auto owner = testing::owner_of(g, n, cfg, m);
        const std::size_t start = owner.chunk * cfg.stride();
        const std::size_t len = std::min(start + cfg.chunk_size, n) - start;
        if (owner.local < b || owner.local + b >= len) {
          hyp[g].case_label = ref[g].case_label == CaseLabel::Upper ? CaseLabel::Lower : CaseLabel::Upper;
          hyp[g].punct = PunctLabel::None;
        }
      }
      bf.add(ref, hyp);
    }
    for (std::size_t c = 0; c < kSlotCount; ++c) {
      EXPECT_NEAR(report[k].report.classes[c].f1, bf.f1(c), 1e-12) << "m=" << m << " class " << c;
      EXPECT_NEAR(report[k].report.classes[c].precision, bf.precision(c), 1e-12);
      EXPECT_NEAR(report[k].report.classes[c].recall, bf.recall(c), 1e-12);
    }
  }
}

TEST(Sweep, EmptyCutListAndValidation) {
  std::vector<LabeledSequence> docs{testing::sample_reference()};
  ModelFactory models(oracle_spec());
  EXPECT_TRUE(sweep(docs, models, ChunkConfig{10, 5}, {}).empty());
  EXPECT_THROW(sweep(docs, models, ChunkConfig{10, 5}, {2, 6}), ConfigError);
}

TEST(Sweep, TsvHasRowPerCutAndClass) {
  std::vector<LabeledSequence> docs{testing::sample_reference()};
  ModelFactory models(noise_spec(2, 1.0));
  const auto tsv = sweep_tsv(sweep(docs, models, ChunkConfig{10, 5}, {0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 1 + 6 * 6);
  EXPECT_NE(tsv.find("\n5\tU\t"), std::string::npos);
}

}  // namespace
}  // namespace chunkpunct
