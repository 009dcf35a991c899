#include <gtest/gtest.h>

#include "geotrack/url.hpp"

using geotrack::parse_url;

TEST(ParseUrl, CanonicalizesSchemeAndHost) {
    const auto u = parse_url("HTTPS://WWW.Example.COM/Path?Q=1#frag");
    ASSERT_TRUE(u);
    EXPECT_EQ(u->scheme, "https");
    EXPECT_EQ(u->host, "www.example.com");
    EXPECT_EQ(u->path, "/Path");
    EXPECT_EQ(u->query, "Q=1");
    EXPECT_EQ(u->canonical, "https://www.example.com/Path?Q=1");
    EXPECT_EQ(u->canonical.substr(u->host_begin, u->host_end - u->host_begin), "www.example.com");
}

TEST(ParseUrl, EmptyPathBecomesSlash) {
    const auto u = parse_url("http://example.com");
    ASSERT_TRUE(u);
    EXPECT_EQ(u->path, "/");
    EXPECT_EQ(u->canonical, "http://example.com/");
    const auto q = parse_url("http://example.com?x=1");
    ASSERT_TRUE(q);
    EXPECT_EQ(q->canonical, "http://example.com/?x=1");
}

TEST(ParseUrl, PortUserinfoAndIpv6) {
    const auto u = parse_url("http://user:pw@Host.com:8080/a");
    ASSERT_TRUE(u);
    EXPECT_EQ(u->host, "host.com");
    EXPECT_EQ(u->port, "8080");
    EXPECT_EQ(u->canonical, "http://user:pw@host.com:8080/a");
    const auto v6 = parse_url("http://[2001:DB8::1]:80/");
    ASSERT_TRUE(v6);
    EXPECT_EQ(v6->host, "[2001:db8::1]");
    EXPECT_EQ(v6->port, "80");
}

TEST(ParseUrl, RejectsNonAbsolute) {
    for (const char* bad : {"", "example.com/a", "/relative", "http://", "http:///x", "mailto:a@b.com",
                            "http://exa mple.com/", "http://host:port/"}) {
        EXPECT_FALSE(parse_url(bad)) << bad;
    }
}

TEST(Hostname, IpLiterals) {
    EXPECT_TRUE(geotrack::is_ipv4_literal("192.0.2.10"));
    EXPECT_FALSE(geotrack::is_ipv4_literal("192.0.2"));
    EXPECT_FALSE(geotrack::is_ipv4_literal("256.0.0.1"));
    EXPECT_TRUE(geotrack::is_ip_literal("[::1]"));
    EXPECT_FALSE(geotrack::is_ip_literal("example.com"));
}

TEST(Hostname, Validity) {
    EXPECT_TRUE(geotrack::is_valid_hostname("a-b.example.com"));
    EXPECT_TRUE(geotrack::is_valid_hostname("example.com."));
    EXPECT_FALSE(geotrack::is_valid_hostname(""));
    EXPECT_FALSE(geotrack::is_valid_hostname("a..b"));
    EXPECT_FALSE(geotrack::is_valid_hostname(std::string(64, 'a') + ".com"));
    EXPECT_FALSE(geotrack::is_valid_hostname("bad host.com"));
}

TEST(Punycode, KnownLabels) {
    const std::pair<const char*, const char*> vectors[] = {
        {"bücher", "xn--bcher-kva"}, {"münchen", "xn--mnchen-3ya"}, {"中国", "xn--fiqs8s"},
        {"españa", "xn--espaa-rta"}, {"日本", "xn--wgv71a"},        {"рф", "xn--p1ai"},
        {"ελ", "xn--qxam"},          {"plain", "plain"},
    };
    for (const auto& [in, out] : vectors) {
        EXPECT_EQ(geotrack::label_to_ascii(in).value_or("<invalid>"), out) << in;
    }
}

TEST(Punycode, RejectsBrokenUtf8) {
    EXPECT_FALSE(geotrack::label_to_ascii("\xc3"));
    EXPECT_FALSE(geotrack::label_to_ascii("a\xff" "b"));
}
