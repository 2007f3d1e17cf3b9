#include "lambdahull/harness.hpp"

int main(int argc, char** argv) { return lambdahull::cli_main(argc, argv); }
