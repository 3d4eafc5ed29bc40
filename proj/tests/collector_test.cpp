#include <thread>

#include <gtest/gtest.h>

#include "httplib.h"
#include "json.hpp"

#include "espim/collector.hpp"
#include "espim/error.hpp"
#include "espim/io.hpp"
#include "espim/session.hpp"

#include "support.hpp"

using namespace espim;
using namespace espim::collector;
using nlohmann::json;

namespace {

std::size_t file_count(const std::filesystem::path& dir)
{
    std::size_t n = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir))
        ++n;
    return n;
}

class CollectorDir : public ::testing::Test {
protected:
    void SetUp() override
    {
        config.out_dir = fixtures::fresh_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    }
    void TearDown() override { std::filesystem::remove_all(config.out_dir); }

    Config config;
};

} // namespace

TEST_F(CollectorDir, AcceptsAndStoresCanonicalForm)
{
    const auto body = fixtures::minimal_session("up-1").dump(2);
    const auto r = handle_upload(config, body, "");
    EXPECT_EQ(r.status, 201);
    EXPECT_EQ(json::parse(r.body)["id"], "up-1");
    const auto stored = io::read_file(config.out_dir / "up-1.json");
    EXPECT_EQ(parse_session(stored), parse_session(body));
    EXPECT_EQ(stored, serialize_session(parse_session(body)));
    EXPECT_EQ(file_count(config.out_dir), 1u);
}

TEST_F(CollectorDir, DuplicateIsConflictAndKeepsOriginal)
{
    const auto first = fixtures::minimal_session("dup").dump();
    ASSERT_EQ(handle_upload(config, first, "").status, 201);
    auto changed = fixtures::minimal_session("dup");
    changed["duration_ms"] = 4000;
    EXPECT_EQ(handle_upload(config, changed.dump(), "").status, 409);
    EXPECT_EQ(parse_session(io::read_file(config.out_dir / "dup.json")).duration_ms, parse_session(first).duration_ms);
}

TEST_F(CollectorDir, InvalidPayloadsCreateNoFiles)
{
    auto rating = fixtures::minimal_session("bad-1");
    rating["post"]["strain_rating"] = 6;
    auto r = handle_upload(config, rating.dump(), "");
    EXPECT_EQ(r.status, 422);
    const auto body = json::parse(r.body);
    ASSERT_FALSE(body["violations"].empty());
    EXPECT_EQ(body["violations"][0]["path"], "/post/strain_rating");

    const auto full = fixtures::minimal_session("bad-2").dump();
    EXPECT_EQ(handle_upload(config, full.substr(0, full.size() / 3), "").status, 422);
    EXPECT_EQ(handle_upload(config, "", "").status, 422);
    EXPECT_EQ(handle_upload(config, fixtures::minimal_session("../escape").dump(), "").status, 422);
    EXPECT_EQ(file_count(config.out_dir), 0u);
}

TEST_F(CollectorDir, BodyLimit)
{
    const auto body = fixtures::minimal_session("big").dump();
    config.max_body_bytes = body.size() - 1;
    EXPECT_EQ(handle_upload(config, body, "").status, 413);
    config.max_body_bytes = body.size();
    EXPECT_EQ(handle_upload(config, body, "").status, 201);
}

TEST_F(CollectorDir, BearerToken)
{
    config.token = "s3cret";
    const auto body = fixtures::minimal_session("auth").dump();
    EXPECT_EQ(handle_upload(config, body, "").status, 401);
    EXPECT_EQ(handle_upload(config, body, "Bearer wrong!").status, 401);
    EXPECT_EQ(handle_upload(config, body, "s3cret").status, 401);
    EXPECT_EQ(handle_upload(config, body, "Basic s3cret").status, 401);
    EXPECT_EQ(file_count(config.out_dir), 0u);
    EXPECT_EQ(handle_upload(config, body, "Bearer s3cret").status, 201);
}

TEST(Collector, Health)
{
    const auto r = handle_health();
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(json::parse(r.body)["status"], "ok");
}

TEST(Collector, ParseBind)
{
    EXPECT_EQ(parse_bind("127.0.0.1:8080"), (std::pair<std::string, int>{"127.0.0.1", 8080}));
    EXPECT_EQ(parse_bind("localhost:0"), (std::pair<std::string, int>{"localhost", 0}));
    EXPECT_EQ(parse_bind("[::1]:9000"), (std::pair<std::string, int>{"::1", 9000}));
    EXPECT_THROW(parse_bind("8080"), DomainError);
    EXPECT_THROW(parse_bind(":8080"), DomainError);
    EXPECT_THROW(parse_bind("host:http"), DomainError);
    EXPECT_THROW(parse_bind("host:70000"), DomainError);
}

TEST_F(CollectorDir, ServesOverHttp)
{
    config.token = "tok";
    config.max_body_bytes = 1 << 20;
    Server server(config);
    const int port = server.bind("127.0.0.1", 0);
    ASSERT_GT(port, 0);
    std::thread worker([&] { server.run(); });
    server.wait_until_ready();

    httplib::Client cli("127.0.0.1", port);
    const httplib::Headers auth{{"Authorization", "Bearer tok"}};
    auto health = cli.Get("/v1/health");
    ASSERT_TRUE(health);
    EXPECT_EQ(health->status, 200);

    auto created = cli.Post("/v1/sessions", auth, fixtures::minimal_session("http-1").dump(), "application/json");
    ASSERT_TRUE(created);
    EXPECT_EQ(created->status, 201);
    auto again = cli.Post("/v1/sessions", auth, fixtures::minimal_session("http-1").dump(), "application/json");
    ASSERT_TRUE(again);
    EXPECT_EQ(again->status, 409);
    auto anonymous = cli.Post("/v1/sessions", fixtures::minimal_session("http-2").dump(), "application/json");
    ASSERT_TRUE(anonymous);
    EXPECT_EQ(anonymous->status, 401);
    auto huge = cli.Post("/v1/sessions", auth, std::string(2 << 20, ' '), "application/json");
    ASSERT_TRUE(huge);
    EXPECT_EQ(huge->status, 413);
    auto missing = cli.Get("/v1/nothing");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 404);
    EXPECT_EQ(json::parse(missing->body)["error"], "not found");

    server.stop();
    worker.join();
    EXPECT_EQ(file_count(config.out_dir), 1u);
}
