#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <functional>
#include <random>
#include <sstream>

#include "doctest.h"
#include "soapforge/error.hpp"
#include "soapforge/xml.hpp"

using namespace soapforge;

TEST_CASE("parse reads elements, attributes and text") {
    auto root = xml::parse(R"(<a x="1"><b>hi</b><c/></a>)");
    CHECK(root.name == "a");
    REQUIRE(root.attrs.size() == 1);
    CHECK(root.attrs[0].name == "x");
    CHECK(root.attrs[0].value == "1");
    REQUIRE(root.children.size() == 2);
    CHECK(root.children[0].name == "b");
    CHECK(root.children[0].text == "hi");
    CHECK(root.children[1].name == "c");
    CHECK(root.find_attr("x") != nullptr);
    CHECK(root.find_attr("y") == nullptr);
}

TEST_CASE("parse handles the five predefined entities and character references") {
    auto root = xml::parse("<t>&lt;&gt;&amp;&quot;&apos;&#65;&#x42;</t>");
    CHECK(root.text == "<>&\"'AB");
}

TEST_CASE("parse handles CDATA and comments") {
    auto root = xml::parse("<t><!-- note --><![CDATA[a < b & c]]></t>");
    CHECK(root.text == "a < b & c");
    CHECK(root.children.empty());
}

TEST_CASE("parse accepts an XML declaration and surrounding whitespace") {
    auto root = xml::parse("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n  <only/>  \n");
    CHECK(root.name == "only");
}

TEST_CASE("parse rejects malformed documents") {
    CHECK_THROWS_AS(xml::parse(""), Error);
    CHECK_THROWS_AS(xml::parse("<a>"), Error);
    CHECK_THROWS_AS(xml::parse("<a></b>"), Error);
    CHECK_THROWS_AS(xml::parse("<a/><b/>"), Error);
    CHECK_THROWS_AS(xml::parse("just text"), Error);
    CHECK_THROWS_AS(xml::parse("<a attr></a>"), Error);
    CHECK_THROWS_AS(xml::parse("<a>&bogus;</a>"), Error);
    CHECK_THROWS_AS(xml::parse("<!DOCTYPE a><a/>"), Error);
    for (const char* doc : {"<a>", "<a><b></a>", "<a x=1/>", "<a x='1' x='2'/>"}) {
        try {
            xml::parse(doc);
            FAIL_CHECK("expected MalformedXml for: ", doc);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::MalformedXml);
        }
    }
}

TEST_CASE("serialize/parse round-trips a nested tree") {
    xml::Element root;
    root.name = "r";
    root.attrs = {{"a", "v&<>\"'"}};
    xml::Element child;
    child.name = "c";
    child.text = "text <with> & entities";
    root.children.push_back(child);
    std::string doc = xml::serialize(root);
    auto back = xml::parse(doc);
    CHECK(back == root);
    CHECK(xml::serialize(root, true).rfind("<?xml", 0) == 0);
}

TEST_CASE("escape helpers cover the markup characters") {
    CHECK(xml::escape_text("a<b>&c") == "a&lt;b&gt;&amp;c");
    // Attributes serialize with double quotes, so apostrophes pass through.
    CHECK(xml::escape_attr("\"'<&") == "&quot;'&lt;&amp;");
    CHECK(xml::escape_attr("tab\there") == "tab&#9;here");
}

TEST_CASE("resolve binds prefixes, default namespaces and scopes") {
    auto root = xml::resolve(xml::parse(
        R"(<p:a xmlns:p="urn:one" xmlns="urn:def"><b/><p:c xmlns:p="urn:two"/></p:a>)"));
    CHECK(root.ns == "urn:one");
    CHECK(root.local == "a");
    REQUIRE(root.children.size() == 2);
    CHECK(root.children[0].ns == "urn:def");
    CHECK(root.children[1].ns == "urn:two");
    CHECK(root.find_child("urn:def", "b") != nullptr);
    CHECK(root.find_child("urn:one", "b") == nullptr);
}

TEST_CASE("resolve drops xmlns attributes and keeps namespaced ones") {
    auto root = xml::resolve(xml::parse(
        R"(<a xmlns:x="urn:x" x:k="1" plain="2"/>)"));
    CHECK(root.attrs.size() == 2);
    const auto* k = root.find_attr("urn:x", "k");
    REQUIRE(k != nullptr);
    CHECK(k->value == "1");
    const auto* plain = root.find_attr("", "plain");
    REQUIRE(plain != nullptr);
    CHECK(plain->value == "2");
}

TEST_CASE("resolve rejects unbound prefixes") {
    CHECK_THROWS_AS(xml::resolve(xml::parse("<q:a/>")), Error);
    CHECK_THROWS_AS(xml::resolve(xml::parse("<a q:x=\"1\"/>")), Error);
}

TEST_CASE("resolve_qname uses the element scope") {
    auto root = xml::resolve(xml::parse(R"(<a xmlns:t="urn:t" xmlns="urn:d"/>)"));
    auto [ns1, local1] = root.resolve_qname("t:Foo");
    CHECK(ns1 == "urn:t");
    CHECK(local1 == "Foo");
    auto [ns2, local2] = root.resolve_qname("Bare");
    CHECK(ns2 == "urn:d");
    CHECK(local2 == "Bare");
    CHECK_THROWS_AS(root.resolve_qname("nope:X"), Error);
}

TEST_CASE("canonical maps infoset-equal documents to identical text") {
    // Same infoset, different prefixes, attribute order and whitespace.
    std::string a =
        R"(<p:env xmlns:p="urn:e"><p:item b="2" a="1">v</p:item>  <p:other/></p:env>)";
    std::string b = "<zz:env xmlns:zz=\"urn:e\">\n  <zz:item a=\"1\" b=\"2\">v</zz:item>"
                    "<zz:other></zz:other></zz:env>";
    CHECK(xml::canonical(a) == xml::canonical(b));
}

TEST_CASE("canonical distinguishes namespace differences") {
    CHECK(xml::canonical(R"(<a xmlns="urn:1"/>)") != xml::canonical(R"(<a xmlns="urn:2"/>)"));
}

TEST_CASE("canonical is idempotent") {
    for (const char* doc :
         {R"(<a xmlns:x="urn:x" xmlns:y="urn:y"><y:b x:k="1"/><c> keep me </c></a>)",
          R"(<root xmlns="urn:d"><m>1</m><m>2</m></root>)",
          "<plain><deep><deeper attr=\"v\">t</deeper></deep></plain>"}) {
        std::string once = xml::canonical(doc);
        CHECK(xml::canonical(once) == once);
    }
}

TEST_CASE("canonical renumbers prefixes by first use") {
    std::string canon = xml::canonical(R"(<a:r xmlns:a="urn:a" xmlns:b="urn:b"><b:c/></a:r>)");
    CHECK(canon.find("n0:r") != std::string::npos);
    CHECK(canon.find("n1:c") != std::string::npos);
}

TEST_CASE("canonical keeps meaningful text and drops inter-element whitespace") {
    std::string canon = xml::canonical("<a>\n  <b>x</b>\n  <c/>\n</a>");
    CHECK(canon.find('\n') == std::string::npos);
    CHECK(canon.find(">x<") != std::string::npos);
}

namespace {

// Oracle: boost::property_tree sees the same element structure and text.
void compare_with_ptree(const std::string& doc) {
    auto mine = xml::parse(doc);
    std::istringstream stream(doc);
    boost::property_tree::ptree oracle;
    boost::property_tree::read_xml(stream, oracle);
    const auto& [oracle_name, oracle_root] = oracle.front();

    std::function<void(const xml::Element&, const std::string&,
                       const boost::property_tree::ptree&)>
        walk = [&](const xml::Element& el, const std::string& name,
                   const boost::property_tree::ptree& node) {
            CHECK(el.name == name);
            CHECK(el.text == node.get_value<std::string>());
            std::size_t attr_count = 0;
            if (auto xmlattr = node.get_child_optional("<xmlattr>")) {
                attr_count = xmlattr->size();
                for (const auto& [attr_name, attr_node] : *xmlattr) {
                    const auto* found = el.find_attr(attr_name);
                    REQUIRE(found != nullptr);
                    CHECK(found->value == attr_node.get_value<std::string>());
                }
            }
            CHECK(el.attrs.size() == attr_count);
            std::vector<std::pair<std::string, const boost::property_tree::ptree*>> oracle_kids;
            for (const auto& [child_name, child_node] : node) {
                if (child_name != "<xmlattr>") oracle_kids.emplace_back(child_name, &child_node);
            }
            REQUIRE(el.children.size() == oracle_kids.size());
            for (std::size_t i = 0; i < oracle_kids.size(); ++i) {
                walk(el.children[i], oracle_kids[i].first, *oracle_kids[i].second);
            }
        };
    walk(mine, oracle_name, oracle_root);
}

}  // namespace

TEST_CASE("parser agrees with boost::property_tree on structure and content") {
    compare_with_ptree(R"(<r a="1" b="two"><x>alpha</x><y z="3"><inner>deep</inner></y></r>)");
    compare_with_ptree("<solo>just text &amp; entity</solo>");
    compare_with_ptree(R"(<ns:doc xmlns:ns="urn:n"><ns:a>1</ns:a><ns:a>2</ns:a></ns:doc>)");
    compare_with_ptree("<e><empty/><after>tail</after></e>");
}

TEST_CASE("random generated trees survive serialize/parse with ptree agreement") {
    std::mt19937 rng(991);
    auto rand_name = [&](int salt) {
        return std::string("el") + std::to_string(salt) + static_cast<char>('a' + rng() % 26);
    };
    std::function<xml::Element(int)> gen = [&](int depth) {
        xml::Element el;
        el.name = rand_name(depth);
        int attrs = static_cast<int>(rng() % 3);
        for (int i = 0; i < attrs; ++i) {
            el.attrs.push_back({"a" + std::to_string(i), "v<&\"" + std::to_string(rng() % 100)});
        }
        if (depth < 3 && rng() % 2 == 0) {
            int kids = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < kids; ++i) el.children.push_back(gen(depth + 1));
        } else {
            el.text = "text&" + std::to_string(rng() % 1000);
        }
        return el;
    };
    for (int i = 0; i < 50; ++i) {
        xml::Element tree = gen(0);
        std::string doc = xml::serialize(tree);
        CHECK(xml::parse(doc) == tree);
        compare_with_ptree(doc);
    }
}
