// Book chapters are attached as doc-tests once written.
